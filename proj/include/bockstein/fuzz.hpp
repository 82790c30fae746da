#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bockstein/json_io.hpp"

namespace bockstein {

inline const std::vector<std::string> kSuites{"compari", "relate", "coker", "structure", "stark", "lemmas"};

struct FuzzConfig {
  std::uint64_t seed = 0;
  std::size_t trials = 100;  // per suite
  std::vector<std::pair<std::uint64_t, int>> rings{{3, 1}, {3, 2}, {5, 1}};
  std::vector<std::uint64_t> structure_primes{2, 3, 5};
  std::size_t max_rank = 3;        // X, Y and stark ranks
  std::size_t complex_rank = 2;    // C^1, C^2 in the relate/coker corpus
  std::size_t max_primes = 3;
  std::size_t max_int_dim = 5;
  std::int64_t max_int_entry = 50;
  std::size_t max_card = 10000;
  std::vector<std::string> suites{"compari"};
  double budget_seconds = 0;  // 0: no limit
};

Json config_to_json(const FuzzConfig& c);

struct Check {
  std::string name;
  bool pass = false;
  std::string details;
};

struct TrialRecord {
  std::string suite;
  std::uint64_t offset = 0;
  std::uint64_t seed = 0;
  std::string digest;  // FNV-1a of the serialized instance
  std::vector<Check> checks;
  Json payload;  // the instance, in the format of the matching subcommand
  bool pass() const;
};

/// One trial of a suite; deterministic in (config, suite, offset).
TrialRecord run_trial(const FuzzConfig& config, const std::string& suite, std::uint64_t offset);

struct FuzzReport {
  FuzzConfig config;
  std::vector<TrialRecord> records;  // ordered by suite, then offset
  bool truncated = false;
  std::size_t failures() const;
  Json to_json() const;
};

/// Trials run in parallel; a trial not started before the budget runs out truncates its suite
/// to the completed prefix.
FuzzReport run_fuzz(const FuzzConfig& config);

/// Random instances shared by the suites, exposed for replay and testing.
PairingData random_pairing_data(SplitMix64& rng, const RingCtx& ctx, std::size_t max_rank);
TwoTermComplex random_complex(SplitMix64& rng, const RingCtx& ctx, std::size_t max_rank);
IntComplex random_int_complex(SplitMix64& rng, std::uint64_t p, std::size_t max_dim, std::int64_t max_entry);
GroupRingElt random_small_elt(SplitMix64& rng, const RingCtx& ctx);

/// Checks behind the suites, one per JSON instance kind.
std::vector<Check> pairing_checks(const CompareReport& rep);
std::vector<Check> relate_checks(const TwoTermComplex& c, std::uint64_t p);
std::vector<Check> coker_checks(const TwoTermComplex& c, std::uint64_t p);
std::vector<Check> structure_checks(const IntComplex& c);
std::vector<Check> stark_checks(const StarkInstance& inst, const std::vector<GroupRingElt>& extension);

std::string digest(const Json& payload);
Json to_json(const Check& c);

}  // namespace bockstein
