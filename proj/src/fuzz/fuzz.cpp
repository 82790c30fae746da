#include "bockstein/fuzz.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <map>
#include <optional>

#include "bockstein/lemmas.hpp"
#include "bockstein/version.hpp"

namespace bockstein {

namespace {

Check check(std::string name, bool pass, std::string details = {}) { return {std::move(name), pass, std::move(details)}; }

std::string kname(const char* base, std::size_t k) { return std::string(base) + "_k" + std::to_string(k); }

std::string join(const std::vector<std::size_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

std::string describe(const Structure& s) { return "free=" + std::to_string(s.free_rank) + " torsion=" + join(s.multiplicities); }

// relate and coker run on one corpus of complexes
std::string corpus(const std::string& suite) { return suite == "relate" || suite == "coker" ? "complex" : suite; }

RingCtx ring_for(const FuzzConfig& c, std::uint64_t offset) {
  auto [p, n] = c.rings.at(offset % c.rings.size());
  return RingCtx(p, n);
}

}  // namespace

Json config_to_json(const FuzzConfig& c) {
  Json rings = Json::array();
  for (auto [p, n] : c.rings) rings.push_back({p, n});
  return {{"seed", c.seed},
          {"trials", c.trials},
          {"rings", rings},
          {"structure_primes", c.structure_primes},
          {"max_rank", c.max_rank},
          {"complex_rank", c.complex_rank},
          {"max_primes", c.max_primes},
          {"max_int_dim", c.max_int_dim},
          {"max_int_entry", c.max_int_entry},
          {"max_card", c.max_card},
          {"suites", c.suites},
          {"budget_seconds", c.budget_seconds}};
}

std::string digest(const Json& payload) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char ch : payload.dump()) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json to_json(const Check& c) { return {{"name", c.name}, {"pass", c.pass}, {"details", c.details}}; }

GroupRingElt random_small_elt(SplitMix64& rng, const RingCtx& ctx) {
  Vec v(ctx.order());
  for (auto& x : v) x = rng.below(ctx.scalars().modulus());
  GroupRingElt x(ctx, std::move(v));
  switch (rng.below(4)) {
    case 0: return x;
    case 1: return x * gamma_minus_one(ctx);
    case 2: return x * norm_element(ctx);
    default: return GroupRingElt::zero(ctx);
  }
}

PairingData random_pairing_data(SplitMix64& rng, const RingCtx& ctx, std::size_t max_rank) {
  std::size_t a = 1 + rng.below(max_rank), b = 1 + rng.below(max_rank);
  return PairingData(ctx, a, b, random_ell(rng, ctx, a, b));
}

TwoTermComplex random_complex(SplitMix64& rng, const RingCtx& ctx, std::size_t max_rank) {
  std::size_t a = 1 + rng.below(max_rank), b = 1 + rng.below(max_rank);
  auto rmatrix = [&](std::size_t rows, std::size_t cols) {
    std::vector<std::vector<GroupRingElt>> m(rows);
    for (auto& row : m)
      for (std::size_t j = 0; j < cols; ++j) row.push_back(random_small_elt(rng, ctx));
    return expand_matrix(ctx, m);
  };
  Module c2 = Module::free(ctx, b);
  if (rng.below(3) == 0) c2 = c2.quotient(rmatrix(1, b));
  Mat d = rmatrix(a, b);
  return TwoTermComplex(Module::free(ctx, a), c2, d);
}

IntComplex random_int_complex(SplitMix64& rng, std::uint64_t p, std::size_t max_dim, std::int64_t max_entry) {
  std::size_t a = 1 + rng.below(max_dim), b = 1 + rng.below(max_dim);
  IntMat d(a, b);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) d.at(i, j) = rng.between(-max_entry, max_entry);
  return {p, d};
}

std::vector<Check> pairing_checks(const CompareReport& rep) {
  std::size_t nonzero = 0;
  for (const auto& r : rep.records)
    if (!r.bd.value.representative.is_zero()) ++nonzero;
  std::string counts = "evaluations=" + std::to_string(rep.evaluations) + " nonzero_generator_values=" + std::to_string(nonzero) +
                       (rep.exhaustive ? " exhaustive" : " sampled");
  return {check("bd_equals_boc", rep.equal == rep.evaluations, "equal=" + std::to_string(rep.equal) + " " + counts),
          check("symmetric", rep.symmetric == rep.evaluations, "symmetric=" + std::to_string(rep.symmetric)),
          check("stable", rep.stable == rep.evaluations, "stable=" + std::to_string(rep.stable)),
          check("bilinear", rep.bilinear)};
}

std::vector<Check> relate_checks(const TwoTermComplex& c, std::uint64_t p) {
  std::vector<Check> out;
  for (std::size_t k = 1; k + 1 <= p; ++k) {
    RelateReport rel = verify_relate(c, static_cast<int>(k));
    out.push_back(check(kname("relate", k), rel.commutes,
                        "generators=" + std::to_string(rel.generators) + " nonzero=" + std::to_string(rel.nonzero) +
                            (rel.detail.empty() ? "" : " " + rel.detail)));
  }
  return out;
}

std::vector<Check> coker_checks(const TwoTermComplex& c, std::uint64_t p) {
  std::vector<Check> out;
  for (std::size_t k = 1; k + 1 <= p; ++k) {
    const int ki = static_cast<int>(k);
    CokerIsos iso = coker_isos(c, ki);
    std::string size = "log_card=" + std::to_string(iso.psi_iso.target().log_card());
    out.push_back(check(kname("coker_psi", k), iso.psi_bijective, size));
    out.push_back(check(kname("coker_beta", k), iso.beta_bijective, size));
    PageChecks pc = verify_pages(c, ki);
    out.push_back(check(kname("pages", k), pc.all()));
  }
  return out;
}

std::vector<Check> structure_checks(const IntComplex& c) {
  Structure oracle = snf_oracle(c);
  TauProfile prof = tau_sequence(c);
  std::string taus = "taus=" + join(std::vector<std::size_t>(prof.taus.begin(), prof.taus.end()));
  bool monotone = true;
  for (std::size_t k = 1; k < prof.taus.size(); ++k) monotone = monotone && prof.taus[k] <= prof.taus[k - 1];
  monotone = monotone && static_cast<std::size_t>(prof.taus.back()) == oracle.free_rank;
  std::vector<Check> out{check("monotone", monotone, taus)};
  try {
    Structure s = recover_structure(prof);
    out.push_back(check("recover_equals_snf", s == oracle, describe(s) + " oracle " + describe(oracle)));
  } catch (const std::invalid_argument& e) {
    out.push_back(check("recover_equals_snf", false, e.what()));
  }
  return out;
}

std::vector<Check> stark_checks(const StarkInstance& inst, const std::vector<GroupRingElt>& extension) {
  StarkSystem sys = stark_from_basis(inst, canonical_basis(inst));
  CompatibilityReport comp = check_compatibility(sys);
  std::vector<std::size_t> bad;
  std::size_t proper = 0;
  for (const auto& row : verify_fitting(inst, sys, inst.rank_x())) {
    if (!row.equal) bad.push_back(row.i);
    if (!(row.fitting == Ideal::whole(inst.ctx()))) ++proper;
  }
  const int expect = static_cast<int>(inst.ctx().order()) * inst.ctx().n();
  return {check("compatibility", comp.ok(), "pairs=" + std::to_string(comp.pairs)),
          check("fitting_equal", bad.empty(), "proper_ideals=" + std::to_string(proper) + " failing_i=" + join(bad)),
          check("basis_generates", stark_module_log_card(inst) == expect && stark_map_bijective(inst)),
          check("vertex_independent", vertex_independent(inst, extension))};
}

bool TrialRecord::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

TrialRecord run_trial(const FuzzConfig& config, const std::string& suite, std::uint64_t offset) {
  TrialRecord rec;
  rec.suite = suite;
  rec.offset = offset;
  rec.seed = trial_seed(config.seed, corpus(suite), offset);
  SplitMix64 rng(rec.seed);
  try {
    if (suite == "compari") {
      RingCtx ctx = ring_for(config, offset);
      PairingData data = random_pairing_data(rng, ctx, config.max_rank);
      rec.payload = pairing_to_json(ctx, data.rank_x(), data.rank_y(), data.ell());
      rec.checks = pairing_checks(compare(data, ctx.p() - 1, {rec.seed, config.max_card}));
    } else if (suite == "relate" || suite == "coker") {
      RingCtx ctx = ring_for(config, offset);
      TwoTermComplex c = random_complex(rng, ctx, config.complex_rank);
      rec.payload = complex_to_json(ctx, c);
      rec.checks = suite == "relate" ? relate_checks(c, ctx.p()) : coker_checks(c, ctx.p());
    } else if (suite == "structure") {
      std::uint64_t p = config.structure_primes.at(offset % config.structure_primes.size());
      IntComplex c = random_int_complex(rng, p, config.max_int_dim, config.max_int_entry);
      rec.payload = int_complex_to_json(c);
      rec.checks = structure_checks(c);
    } else if (suite == "stark") {
      RingCtx ctx = ring_for(config, offset);
      std::size_t r = 1 + rng.below(std::min(config.max_primes, config.max_rank));
      std::size_t a = std::min(r + rng.below(2), config.max_rank);
      StarkInstance inst = build_instance(ctx, r, random_ell(rng, ctx, a, r));
      std::vector<GroupRingElt> ext;
      Json ext_json = Json::array();
      for (std::size_t j = 0; j < r; ++j) {
        ext.push_back(random_small_elt(rng, ctx));
        ext_json.push_back(to_json(ext.back()));
      }
      rec.payload = stark_to_json(inst);
      rec.payload["extension"] = ext_json;
      rec.checks = stark_checks(inst, ext);
    } else if (suite == "lemmas") {
      RingCtx ctx = ring_for(config, offset);
      std::size_t d = 1 + rng.below(config.max_rank);
      // list every vector only while R^d stays small
      double size = 1;
      for (std::size_t i = 0; i < d * ctx.order(); ++i) size *= static_cast<double>(ctx.scalars().modulus());
      bool exhaustive = size <= 20000;
      rec.payload = {{"ring", to_json(ctx)}, {"rank", d}, {"exhaustive", exhaustive}};
      for (auto& l : ring_lemmas(ctx, d, exhaustive)) rec.checks.push_back(check(l.name, l.pass, l.detail));
    } else {
      throw std::invalid_argument("unknown suite " + suite);
    }
  } catch (const std::exception& e) {
    rec.checks.push_back(check("exception", false, e.what()));
  }
  rec.digest = digest(rec.payload);
  return rec;
}

std::size_t FuzzReport::failures() const {
  std::size_t f = 0;
  for (const auto& r : records) f += r.pass() ? 0 : 1;
  return f;
}

Json FuzzReport::to_json() const {
  Json recs = Json::array();
  std::map<std::string, std::pair<std::size_t, std::size_t>> per_suite;
  for (const auto& s : config.suites) per_suite[s];
  for (const auto& r : records) {
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back(bockstein::to_json(c));
    Json j = {{"suite", r.suite}, {"offset", r.offset}, {"seed", r.seed}, {"digest", r.digest}, {"pass", r.pass()}, {"checks", checks}};
    if (!r.pass()) j["payload"] = r.payload;
    recs.push_back(std::move(j));
    auto& [passed, failed] = per_suite[r.suite];
    ++(r.pass() ? passed : failed);
  }
  Json summary = Json::object();
  for (const auto& [s, pf] : per_suite) summary[s] = {{"trials", pf.first + pf.second}, {"passed", pf.first}, {"failed", pf.second}};
  return {{"version", kVersion},
          {"config", config_to_json(config)},
          {"records", recs},
          {"summary", summary},
          {"failures", failures()},
          {"truncated", truncated},
          {"pass", failures() == 0}};
}

FuzzReport run_fuzz(const FuzzConfig& config) {
  for (const auto& s : config.suites)
    if (std::find(kSuites.begin(), kSuites.end(), s) == kSuites.end()) throw std::invalid_argument("unknown suite " + s);
  const std::size_t total = config.suites.size() * config.trials;
  std::vector<std::optional<TrialRecord>> slots(total);
  const auto start = std::chrono::steady_clock::now();
  std::atomic<bool> out_of_time{false};

#pragma omp parallel for schedule(dynamic)
  for (std::size_t t = 0; t < total; ++t) {
    if (config.budget_seconds > 0) {
      std::chrono::duration<double> el = std::chrono::steady_clock::now() - start;
      if (el.count() > config.budget_seconds) out_of_time = true;
    }
    if (out_of_time) continue;
    slots[t] = run_trial(config, config.suites[t / config.trials], t % config.trials);
  }

  FuzzReport rep;
  rep.config = config;
  for (std::size_t s = 0; s < config.suites.size(); ++s) {
    for (std::size_t o = 0; o < config.trials; ++o) {
      auto& slot = slots[s * config.trials + o];
      if (!slot) {
        rep.truncated = true;
        break;
      }
      rep.records.push_back(std::move(*slot));
    }
  }
  return rep;
}

}  // namespace bockstein
