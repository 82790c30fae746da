#include <omp.h>

#include "bockstein/fuzz.hpp"
#include "doctest.h"

using namespace bockstein;

namespace {

std::string error_path(const Json& j, auto&& reader) {
  try {
    reader(j);
  } catch (const InputError& e) {
    return e.what();
  }
  return "no error";
}

}  // namespace

TEST_CASE("matrices round trip") {
  Zpn z(3, 2);
  Mat m = Mat::from_rows(z, 3, {{1, 8, 0}, {4, 5, 6}});
  CHECK(mat_from_json(to_json(m), z) == m);
  Json neg = to_json(m);
  neg["entries"][0] = -8;
  CHECK(mat_from_json(neg, z).at(0, 0) == 1);

  IntMat big(1, 2);
  big.at(0, 0) = BigInt("123456789012345678901234567890");
  big.at(0, 1) = -7;
  Json bj = to_json(big);
  CHECK(bj["entries"][0].is_string());
  IntMat back = int_mat_from_json(bj);
  CHECK(back.at(0, 0) == big.at(0, 0));
  CHECK(back.at(0, 1) == -7);
}

TEST_CASE("instances round trip") {
  FuzzConfig cfg;
  SplitMix64 g(9);
  RingCtx ctx(3, 2);
  for (int t = 0; t < 10; ++t) {
    TwoTermComplex c = random_complex(g, ctx, 2);
    TwoTermComplex back = complex_from_json(complex_to_json(ctx, c));
    CHECK(back.c1() == c.c1());
    CHECK(back.c2() == c.c2());
    CHECK(back.d() == c.d());

    PairingData d = random_pairing_data(g, ctx, 2);
    CHECK(pairing_from_json(pairing_to_json(ctx, d.rank_x(), d.rank_y(), d.ell())).s() == d.s());

    IntComplex ic = random_int_complex(g, 5, 4, 50);
    CHECK(snf_oracle(int_complex_from_json(int_complex_to_json(ic))) == snf_oracle(ic));
  }
}

TEST_CASE("diagnostics carry the JSON path") {
  Json p = Json::parse(R"({"ring": {"p": 3, "n": 1}, "rank_X": 1, "rank_Y": 1,
                           "ell": {"rows": 3, "cols": 3, "modulus": 3, "entries": [1,0,0,0,1,0,0,0,1]}})");
  auto pairing = [](const Json& j) { return pairing_from_json(j); };
  CHECK(error_path(p, pairing) == "no error");

  Json q = p;
  q.erase("rank_Y");
  CHECK(error_path(q, pairing) == "parse-error at $.rank_Y");
  q = p;
  q["ell"]["modulus"] = 9;
  CHECK(error_path(q, pairing) == "parse-error at $.ell.modulus");
  q = p;
  q["ell"]["entries"][5] = 1.5;
  CHECK(error_path(q, pairing) == "parse-error at $.ell.entries[5]");
  q = p;
  q["ell"]["entries"].erase(0);
  CHECK(error_path(q, pairing) == "parse-error at $.ell.entries");
  q = p;
  q["ring"]["p"] = 4;
  CHECK(error_path(q, pairing) == "parse-error at $.ring.p");
  q = p;
  q["rank_X"] = 2;
  CHECK(error_path(q, pairing) == "parse-error at $.ell");

  Json s = Json::parse(R"({"p": 3, "d": {"rows": 1, "cols": 2, "modulus": "int", "entries": [3, "12a"]}})");
  CHECK(error_path(s, [](const Json& j) { return int_complex_from_json(j); }) == "parse-error at $.d.entries[1]");

  // gamma must have order dividing p^n and preserve the relations
  Json m = Json::parse(R"({"generators": 2, "relations": {"rows": 1, "cols": 2, "modulus": 3, "entries": [1, 0]},
                           "gamma_action": {"rows": 2, "cols": 2, "modulus": 3, "entries": [0, 1, 1, 0]}})");
  CHECK_THROWS_AS(module_from_json(m, RingCtx(3, 1)), InputError);
  m["gamma_action"]["entries"] = {1, 1, 0, 1};
  CHECK_THROWS_AS(module_from_json(m, RingCtx(3, 1)), InputError);
  m["gamma_action"]["entries"] = {1, 0, 0, 1};
  CHECK(module_from_json(m, RingCtx(3, 1)).log_card() == 1);
}

TEST_CASE("invalid data surfaces the validation error") {
  // l = gamma - 1 on the scalars only is not R-linear
  Json p = Json::parse(R"({"ring": {"p": 3, "n": 1}, "rank_X": 1, "rank_Y": 1,
                           "ell": {"rows": 3, "cols": 3, "modulus": 3, "entries": [1,0,0,0,0,0,0,0,0]}})");
  CHECK_THROWS_AS(pairing_from_json(p), PairingError);
}

TEST_CASE("fuzz reports") {
  FuzzConfig cfg;
  cfg.seed = 11;
  cfg.trials = 4;
  cfg.suites = kSuites;
  FuzzReport a = run_fuzz(cfg);
  CHECK(a.records.size() == 4 * kSuites.size());
  CHECK(a.failures() == 0);
  CHECK(a.to_json().dump() == run_fuzz(cfg).to_json().dump());
  // records are canonical: suite order, then offset
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].suite == kSuites[i / 4]);
    CHECK(a.records[i].offset == i % 4);
  }
  // one trial replays on its own
  TrialRecord r = run_trial(cfg, "stark", 2);
  CHECK(r.digest == a.records[4 * 4 + 2].digest);

  cfg.trials = 0;
  CHECK(run_fuzz(cfg).to_json()["pass"] == true);
  cfg.suites = {"bogus"};
  CHECK_THROWS(run_fuzz(cfg));
}

TEST_CASE("budget truncation keeps a prefix") {
  FuzzConfig cfg;
  cfg.trials = 50;
  cfg.suites = {"stark"};
  cfg.budget_seconds = 1e-9;
  FuzzReport r = run_fuzz(cfg);
  CHECK(r.truncated);
  CHECK(r.records.size() < 50);
  for (std::size_t i = 0; i < r.records.size(); ++i) CHECK(r.records[i].offset == i);
  CHECK(r.to_json()["truncated"] == true);
}

TEST_CASE("fuzz output does not depend on the thread count") {
  FuzzConfig cfg;
  cfg.seed = 12;
  cfg.trials = 5;
  cfg.suites = kSuites;
  omp_set_num_threads(1);
  std::string one = run_fuzz(cfg).to_json().dump();
  omp_set_num_threads(4);
  CHECK(run_fuzz(cfg).to_json().dump() == one);
}
