#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "bockstein/fuzz.hpp"
#include "bockstein/version.hpp"

using namespace bockstein;

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailure = 1;
constexpr int kInputError = 2;

struct Globals {
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::vector<std::string> rings;
  std::string json_out;
  std::size_t max_card = 10000;
};

std::pair<std::uint64_t, int> parse_ring(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw InputError("--ring", "expected p,n");
  try {
    std::size_t used = 0;
    unsigned long long p = std::stoull(s.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument(s);
    int n = std::stoi(s.substr(comma + 1), &used);
    if (used != s.size() - comma - 1) throw std::invalid_argument(s);
    RingCtx check(p, n);
    return {p, n};
  } catch (const std::exception&) {
    throw InputError("--ring", "expected an odd prime p and n >= 1 with p^n <= 4096, got " + s);
  }
}

bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

Json checks_json(const std::vector<Check>& checks) {
  Json out = Json::array();
  for (const auto& c : checks) out.push_back(to_json(c));
  return out;
}

int emit(const Globals& g, Json report, bool pass) {
  report["version"] = kVersion;
  report["pass"] = pass;
  const std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (!g.json_out.empty()) {
    std::ofstream out(g.json_out);
    if (!out) {
      std::cerr << "cannot write " << g.json_out << "\n";
      return kInputError;
    }
    out << text;
  }
  return pass ? kPass : kCheckFailure;
}

Json vec_json(const Vec& v) { return Json(v); }

int cmd_pairing(const Globals& g, const std::string& file, std::size_t kmax) {
  Json in = load_json(file);
  PairingData data = pairing_from_json(in);
  if (kmax == 0) kmax = data.ctx().p() - 1;
  if (kmax >= data.ctx().p()) throw PairingError("unsupported-k", "--kmax " + std::to_string(kmax));
  CompareReport rep = compare(data, kmax, {g.seed, g.max_card});
  Json table = Json::array();
  for (const auto& r : rep.records)
    table.push_back({{"k", r.k}, {"s", vec_json(r.s)}, {"t", vec_json(r.t)}, {"bd", to_json(r.bd)}, {"boc", to_json(r.boc)},
                     {"equal", r.equal}, {"symmetric", r.symmetric}, {"stable", r.stable}});
  auto checks = pairing_checks(rep);
  Json out = {{"command", "pairing"}, {"input", digest(in)}, {"kmax", kmax}, {"seed", g.seed},
              {"evaluations", rep.evaluations}, {"exhaustive", rep.exhaustive}, {"table", table}, {"checks", checks_json(checks)}};
  return emit(g, out, all_pass(checks));
}

int cmd_spectral(const Globals& g, const std::string& file, std::size_t kmax) {
  Json in = load_json(file);
  TwoTermComplex c = complex_from_json(in);
  const std::uint64_t p = c.c1().scalars().p();
  if (kmax == 0 || kmax >= p) kmax = p - 1;
  Json pages = Json::array();
  for (std::size_t k = 1; k <= kmax; ++k) {
    const int ki = static_cast<int>(k);
    pages.push_back({{"k", k},
                     {"log_card_E_k_0_1", page_entry(c, ki, 0, 1).module.log_card()},
                     {"log_card_E_k_k_2mk", page_entry(c, ki, ki, 2 - ki).module.log_card()},
                     {"log_card_E_k1_k_2mk", page_entry(c, ki + 1, ki, 2 - ki).module.log_card()}});
  }
  auto checks = relate_checks(c, kmax + 1);
  auto more = coker_checks(c, kmax + 1);
  checks.insert(checks.end(), more.begin(), more.end());
  Json out = {{"command", "spectral"}, {"input", digest(in)}, {"kmax", kmax}, {"pages", pages}, {"checks", checks_json(checks)}};
  return emit(g, out, all_pass(checks));
}

int cmd_stark(const Globals& g, const std::string& file) {
  Json in = load_json(file);
  StarkInstance inst = stark_from_json(in);
  std::vector<GroupRingElt> ext(inst.primes(), GroupRingElt::zero(inst.ctx()));
  if (in.contains("extension")) {
    const Json& e = in["extension"];
    if (!e.is_array() || e.size() != inst.primes()) throw InputError("$.extension", "expected one element per prime");
    for (std::size_t j = 0; j < ext.size(); ++j) ext[j] = elt_from_json(e[j], inst.ctx(), "$.extension[" + std::to_string(j) + "]");
  }
  StarkSystem sys = stark_from_basis(inst, canonical_basis(inst));
  Json rows = Json::array();
  for (const auto& r : verify_fitting(inst, sys, inst.rank_x()))
    rows.push_back({{"i", r.i}, {"fitting", to_json(r.fitting)}, {"stark", to_json(r.stark)}, {"equal", r.equal}});
  auto checks = stark_checks(inst, ext);
  Json out = {{"command", "stark"}, {"input", digest(in)}, {"chi", inst.chi()}, {"fitting", rows}, {"checks", checks_json(checks)}};
  return emit(g, out, all_pass(checks));
}

int cmd_fitting(const Globals& g, const std::string& file) {
  Json in = load_json(file);
  if (!in.is_object() || !in.contains("ring")) throw InputError("$.ring", "missing field");
  RingCtx ctx = ring_from_json(in["ring"], "$.ring");
  Module m = module_from_json(in, ctx, "$");
  RPresentation pres(ctx, m);
  Json ideals = Json::array();
  for (std::size_t i = 0; i <= pres.size(); ++i) ideals.push_back({{"i", i}, {"generators", to_json(fitting_ideal(ctx, m, i))}});
  Json out = {{"command", "fitting"}, {"input", digest(in)}, {"log_card", m.log_card()}, {"minimal_generators", pres.size()},
              {"fitting", ideals}};
  return emit(g, out, true);
}

int cmd_structure(const Globals& g, const std::string& file, std::size_t kmax) {
  Json in = load_json(file);
  IntComplex c = int_complex_from_json(in);
  TauProfile prof = kmax == 0 ? tau_sequence(c) : tau_sequence(c, kmax);
  Json recovered;
  try {
    recovered = to_json(recover_structure(prof));
  } catch (const std::invalid_argument& e) {
    recovered = e.what();
  }
  auto checks = structure_checks(c);
  Json out = {{"command", "structure"}, {"input", digest(in)}, {"taus", prof.taus}, {"k0", prof.k0},
              {"recovered", recovered}, {"oracle", to_json(snf_oracle(c))}, {"checks", checks_json(checks)}};
  return emit(g, out, all_pass(checks));
}

int cmd_fuzz(const Globals& g, std::vector<std::string> suites, double budget, std::size_t max_rank) {
  FuzzConfig cfg;
  cfg.seed = g.seed;
  cfg.trials = g.trials;
  cfg.max_card = g.max_card;
  cfg.budget_seconds = budget;
  cfg.max_rank = max_rank;
  if (!g.rings.empty()) {
    cfg.rings.clear();
    for (const auto& r : g.rings) cfg.rings.push_back(parse_ring(r));
  }
  if (suites.empty() || std::find(suites.begin(), suites.end(), "all") != suites.end()) suites = kSuites;
  for (const auto& s : suites)
    if (std::find(kSuites.begin(), kSuites.end(), s) == kSuites.end()) throw InputError("--suite", "unknown suite " + s);
  cfg.suites = suites;
  FuzzReport rep = run_fuzz(cfg);
  Json out = rep.to_json();
  out["command"] = "fuzz";
  return emit(g, out, rep.failures() == 0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for derived height pairings, Bockstein spectral sequences and Stark systems"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for random choices");
  app.add_option("--trials", g.trials, "Fuzz trials per suite");
  app.add_option("--ring", g.rings, "Ring p,n (repeatable)");
  app.add_option("--json-out", g.json_out, "Also write the report to this path");
  app.add_option("--max-card", g.max_card, "Enumerate pairing pieces only up to this cardinality");

  std::string file;
  std::size_t kmax = 0;
  auto* pairing = app.add_subcommand("pairing", "Compare both pairings on a PairingData file");
  pairing->add_option("file", file, "PairingData JSON, - for stdin")->required();
  pairing->add_option("--kmax", kmax, "Largest k (default p-1)");
  auto* spectral = app.add_subcommand("spectral", "Page entries and Bockstein identities of a complex");
  spectral->add_option("file", file, "Complex JSON")->required();
  spectral->add_option("--kmax", kmax, "Largest k (default p-1)");
  auto* stark = app.add_subcommand("stark", "Stark system and Fitting ideals of a core-vertex instance");
  stark->add_option("file", file, "Instance JSON")->required();
  auto* fitting = app.add_subcommand("fitting", "Fitting ideals of a finitely presented module");
  fitting->add_option("file", file, "Module JSON")->required();
  auto* structure = app.add_subcommand("structure", "Recover H^2 of an integer complex from its tau profile");
  structure->add_option("file", file, "IntComplex JSON")->required();
  structure->add_option("--kmax", kmax, "Largest k (default from a minor valuation)");
  auto* fuzz = app.add_subcommand("fuzz", "Seeded random campaign over the check suites");
  std::vector<std::string> suites;
  double budget = 0;
  std::size_t max_rank = 3;
  fuzz->add_option("--suite", suites, "compari, relate, coker, structure, stark, lemmas or all (repeatable)");
  fuzz->add_option("--budget", budget, "Wall-clock budget in seconds; later trials are truncated");
  fuzz->add_option("--max-rank", max_rank, "Largest module rank")->check(CLI::Range(1, 4));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*pairing) return cmd_pairing(g, file, kmax);
    if (*spectral) return cmd_spectral(g, file, kmax);
    if (*stark) return cmd_stark(g, file);
    if (*fitting) return cmd_fitting(g, file);
    if (*structure) return cmd_structure(g, file, kmax);
    return cmd_fuzz(g, suites, budget, max_rank);
  } catch (const InputError& e) {
    std::cerr << e.what() << ": " << e.reason() << "\n";
  } catch (const PairingError& e) {
    std::cerr << "invalid pairing data: " << e.what() << "\n";
  } catch (const StarkError& e) {
    std::cerr << "invalid instance: " << e.what() << "\n";
  }
  return kInputError;
}
