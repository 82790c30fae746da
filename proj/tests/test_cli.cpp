#include <sys/wait.h>

#include <cstdio>
#include <fstream>

#include "bockstein/fuzz.hpp"
#include "doctest.h"

using namespace bockstein;

namespace {

struct Run {
  int status = -1;
  std::string out;
  Json json() const { return Json::parse(out); }
};

Run run(const std::string& args) {
  Run r;
  FILE* pipe = popen((std::string(BOCKSTEIN_CLI) + " " + args).c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string data(const char* name) { return std::string(BOCKSTEIN_DATA) + "/" + name; }

}  // namespace

TEST_CASE("pairing command") {
  auto id = run("pairing " + data("pairing_identity.json"));
  CHECK(id.status == 0);
  CHECK(id.json()["table"].empty());

  auto norm = run("pairing " + data("pairing_norm.json"));
  CHECK(norm.status == 0);
  bool found = false;
  const Json table = norm.json()["table"];
  for (const auto& r : table)
    if (r["k"] == 2 && r["bd"]["scalar"] == 1 && r["boc"]["scalar"] == 1) found = true;
  CHECK(found);

  auto bad = run("pairing " + data("pairing_corrupt.json") + " 2>&1");
  CHECK(bad.status == 2);
  CHECK(bad.out.find("parse-error at $.ell.entries[3]") != std::string::npos);

  CHECK(run("pairing /nonexistent.json 2>/dev/null").status == 2);
  CHECK(run("pairing " + data("pairing_norm.json") + " --kmax 3 2>/dev/null").status == 2);
}

TEST_CASE("structure command") {
  auto diag = run("structure " + data("structure_diag.json"));
  CHECK(diag.status == 0);
  auto j = diag.json();
  CHECK(j["taus"][0] == 2);
  CHECK(j["taus"][1] == 1);
  CHECK(j["taus"][2] == 0);
  CHECK(j["k0"] == 2);
  CHECK(j["recovered"] == Json{{"free_rank", 0}, {"torsion", {1, 1}}});
  CHECK(j["recovered"] == j["oracle"]);

  auto zero = run("structure " + data("structure_zero.json"));
  CHECK(zero.status == 0);
  CHECK(zero.json()["recovered"]["free_rank"] == 3);
}

TEST_CASE("spectral, stark and fitting commands") {
  auto sp = run("spectral " + data("complex_gamma.json"));
  CHECK(sp.status == 0);
  CHECK(sp.json()["pages"][0]["log_card_E_k_0_1"] == 1);

  auto st = run("stark " + data("stark_norm.json"));
  CHECK(st.status == 0);
  auto rows = st.json()["fitting"];
  REQUIRE(rows.size() == 2);
  CHECK(rows[0]["equal"] == true);
  CHECK(rows[0]["fitting"] == Json{{1, 1, 1}});

  auto fit = run("fitting " + data("module_norm_quotient.json"));
  CHECK(fit.status == 0);
  CHECK(fit.json()["fitting"][0]["generators"] == Json{{1, 1, 1}});
}

TEST_CASE("fuzz command") {
  auto empty = run("fuzz --trials 0 --suite all");
  CHECK(empty.status == 0);
  CHECK(empty.json()["records"].empty());
  CHECK(empty.json()["pass"] == true);

  auto c = run("--seed 42 --trials 100 --ring 3,1 fuzz --suite compari");
  CHECK(c.status == 0);
  CHECK(c.json()["summary"]["compari"]["passed"] == 100);

  const std::string args = "fuzz --seed 7 --trials 6 --suite all --ring 3,1 --ring 5,1";
  auto a = run(args), b = run(args);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.json()["config"]["seed"] == 7);

  CHECK(run("fuzz --suite nonsense 2>/dev/null").status == 2);
  CHECK(run("fuzz --ring 4,1 2>/dev/null").status == 2);
  CHECK(run("--bogus 2>/dev/null").status == 2);
}

TEST_CASE("fuzz payloads replay through the subcommands") {
  FuzzConfig cfg;
  cfg.seed = 3;
  const std::vector<std::pair<std::string, std::string>> routes{
      {"compari", "pairing"}, {"relate", "spectral"}, {"coker", "spectral"}, {"structure", "structure"}, {"stark", "stark"}};
  for (const auto& [suite, cmd] : routes) {
    TrialRecord rec = run_trial(cfg, suite, 1);
    REQUIRE(rec.pass());
    const std::string path = "replay_" + suite + ".json";
    std::ofstream(path) << rec.payload.dump();
    auto r = run(cmd + " " + path);
    CHECK_MESSAGE(r.status == 0, suite);
    CHECK(r.json()["input"] == rec.digest);
    std::remove(path.c_str());
  }
}
