// Runs the nine acceptance criteria and prints one PASS/FAIL line for each.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>

#include "bockstein/fuzz.hpp"
#include "bockstein/lemmas.hpp"

using namespace bockstein;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string summary;
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::size_t count_failed(const FuzzReport& rep, const std::function<bool(const std::string&)>& which) {
  std::size_t bad = 0;
  for (const auto& r : rep.records) {
    bool ok = true;
    for (const auto& c : r.checks)
      if ((which(c.name) || c.name == "exception") && !c.pass) ok = false;
    bad += ok ? 0 : 1;
  }
  return bad;
}

std::size_t number_after(const std::string& s, const std::string& key) {
  auto pos = s.find(key + "=");
  return pos == std::string::npos ? 0 : std::stoul(s.substr(pos + key.size() + 1));
}

FuzzConfig base_config(std::vector<std::string> suites, std::size_t trials) {
  FuzzConfig c;
  c.seed = 20240601;
  c.trials = trials;
  c.suites = std::move(suites);
  return c;
}

// ---- criterion 8: values on the 27-element ring by listing every choice of lift ----

using Elt = std::vector<int>;  // coefficients of 1, gamma, gamma^2 mod 3

Elt mul(const Elt& a, const Elt& b) {
  Elt c(3, 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c[(i + j) % 3] = (c[(i + j) % 3] + a[i] * b[j]) % 3;
  return c;
}

std::vector<Elt> ring27() {
  std::vector<Elt> out;
  for (int i = 0; i < 27; ++i) out.push_back({i % 3, i / 3 % 3, i / 9});
  return out;
}

const Elt kG1{2, 1, 0};  // gamma - 1
const Elt kN{1, 1, 1};
const Elt kD1{2, 1, 0};  // D^(1) = -(1 + 2 gamma)

// The scalar c with v = c (gamma-1)^k mod I^(k+1), or -1 when v is not in I^k or no c fits.
int brute_scalar(const Elt& v, int k) {
  Elt gk{1, 0, 0};
  for (int i = 0; i < k; ++i) gk = mul(gk, kG1);
  std::set<Elt> next;
  for (const auto& z : ring27()) next.insert(mul(mul(gk, kG1), z));
  int found = -1;
  for (int c = 0; c < 3; ++c) {
    Elt diff(3);
    for (int i = 0; i < 3; ++i) diff[i] = ((v[i] - c * gk[i]) % 3 + 3) % 3;
    if (next.count(diff)) found = found == -1 ? c : -2;
  }
  return found;
}

// Every admissible (s~, x, y~, y) for s = t = N and l = multiplication by ell; the set of scalars.
std::set<int> brute_values(const Elt& ell, int k) {
  auto ring = ring27();
  std::set<Elt> s_mod;  // S = T = ker(ell)
  for (const auto& z : ring)
    if (mul(z, ell) == Elt{0, 0, 0}) s_mod.insert(z);
  auto lifts = [&]() {
    std::vector<Elt> xs;
    for (const auto& st : s_mod) {
      if (k == 2 && mul(kG1, st) != kN) continue;
      if (k == 1 && st != kN) continue;
      for (const auto& x : ring) {
        Elt img = k == 1 ? mul(kN, x) : mul(kD1, x);
        if (img == st) xs.push_back(x);
      }
    }
    return xs;
  };
  std::set<int> values;
  for (const auto& x : lifts())
    for (const auto& y : lifts()) values.insert(brute_scalar(mul(mul(x, ell), y), k));
  return values;
}

Outcome micro_examples() {
  std::string detail;
  bool ok = true;
  RingCtx ctx(3, 1);
  const Vec n = norm_element(ctx).coeffs();
  struct Case {
    const char* name;
    Elt ell;
    GroupRingElt elt;
    std::size_t k;
  };
  for (const Case& c : {Case{"gamma-1", kG1, gamma_minus_one(ctx), 1}, Case{"N", kN, norm_element(ctx), 2}}) {
    auto oracle = brute_values(c.ell, static_cast<int>(c.k));
    bool oracle_ok = oracle == std::set<int>{1};
    PairingData data(ctx, 1, 1, regular_rep(c.elt));
    PairingValue bd = bd_pairing(data, c.k, n, n), boc = boc_pairing(data, c.k, n, n);
    bool paths = bd.scalar == 1 && boc.scalar == 1 && bd == boc;
    ok = ok && oracle_ok && paths;
    detail += std::string(detail.empty() ? "" : ", ") + "l=" + c.name + " <N,N>_" + std::to_string(c.k) + ": oracle " +
              (oracle_ok ? "1" : "inconsistent") + ", bd " + std::to_string(bd.scalar) + ", boc " + std::to_string(boc.scalar);
  }
  return {ok, detail};
}

Outcome ring_lemma_outcome() {
  std::size_t total = 0, failed = 0;
  auto run = [&](RingCtx ctx, std::size_t d, bool exhaustive) {
    for (const auto& l : ring_lemmas(ctx, d, exhaustive)) {
      ++total;
      if (!l.pass) ++failed;
    }
  };
  run(RingCtx(3, 1), 2, true);
  run(RingCtx(3, 2), 3, false);
  run(RingCtx(5, 1), 3, false);
  return {failed == 0, std::to_string(total - failed) + "/" + std::to_string(total) +
                           " identities (exhaustive at (3,1) up to R^2, span algebra at (3,2), (5,1) up to R^3)"};
}

}  // namespace

int main() {
  std::vector<Outcome> results(10);
  char buf[512];

  {
    auto t = Clock::now();
    FuzzReport rep = run_fuzz(base_config({"compari"}, 1000));
    double el = seconds_since(t);
    std::size_t evals = 0, nonzero = 0, active = 0;
    for (const auto& r : rep.records)
      for (const auto& c : r.checks)
        if (c.name == "bd_equals_boc") {
          evals += number_after(c.details, "evaluations");
          active += number_after(c.details, "evaluations") > 0;
          nonzero += number_after(c.details, "nonzero_generator_values") > 0;
        }
    std::size_t bad1 = count_failed(rep, [](const std::string& n) { return n == "bd_equals_boc"; });
    std::snprintf(buf, sizeof buf, "%zu instances (%zu with admissible pairs, %zu with nonzero values), %zu evaluations, %zu failing, %.1f s",
                  rep.records.size(), active, nonzero, evals, bad1, el);
    results[1] = {bad1 == 0 && rep.records.size() == 1000 && evals > 0 && el < 300, buf};
    std::size_t bad2 = count_failed(rep, [](const std::string& n) { return n == "symmetric" || n == "stable" || n == "bilinear"; });
    std::snprintf(buf, sizeof buf, "same corpus, fresh lifts and gamma -> gamma^u, dual sequence: %zu failing instances", bad2);
    results[2] = {bad2 == 0 && evals > 0, buf};
  }
  {
    auto t = Clock::now();
    FuzzReport rel = run_fuzz(base_config({"relate"}, 500));
    double el = seconds_since(t);
    std::size_t gens = 0, nonzero = 0;
    for (const auto& r : rel.records)
      for (const auto& c : r.checks) {
        gens += number_after(c.details, "generators");
        nonzero += number_after(c.details, "nonzero");
      }
    std::size_t bad = count_failed(rel, [](const std::string&) { return true; });
    std::snprintf(buf, sizeof buf, "%zu complexes, all 1 <= k <= p-1, %zu generators (%zu with nonzero image), %zu failing, %.1f s",
                  rel.records.size(), gens, nonzero, bad, el);
    results[3] = {bad == 0 && rel.records.size() == 500 && nonzero > 0 && el < 120, buf};

    FuzzReport cok = run_fuzz(base_config({"coker"}, 500));
    std::size_t bad4 = count_failed(cok, [](const std::string& n) { return n.rfind("coker_", 0) == 0; });
    std::size_t bad_pages = count_failed(cok, [](const std::string& n) { return n.rfind("pages_", 0) == 0; });
    std::snprintf(buf, sizeof buf, "%zu complexes: %zu failing bijections, %zu failing page identities", cok.records.size(), bad4, bad_pages);
    results[4] = {bad4 == 0 && bad_pages == 0 && cok.records.size() == 500, buf};
  }
  {
    auto t = Clock::now();
    FuzzReport rep = run_fuzz(base_config({"structure"}, 1500));
    double el = seconds_since(t);
    std::size_t torsion = 0;
    for (const auto& r : rep.records)
      for (const auto& c : r.checks)
        if (c.name == "recover_equals_snf" && c.details.find("torsion=[]") == std::string::npos) ++torsion;
    std::size_t bad = count_failed(rep, [](const std::string&) { return true; });
    std::snprintf(buf, sizeof buf, "500 matrices for each p in {2,3,5} (%zu with p-torsion), %zu failing, %.1f s", torsion, bad, el);
    results[5] = {bad == 0 && rep.records.size() == 1500 && el < 60, buf};
  }
  {
    auto t = Clock::now();
    FuzzReport rep = run_fuzz(base_config({"stark"}, 300));
    double el = seconds_since(t);
    std::size_t proper = 0;
    for (const auto& r : rep.records)
      for (const auto& c : r.checks)
        if (c.name == "fitting_equal") proper += number_after(c.details, "proper_ideals") > 0;
    std::size_t fit = count_failed(rep, [](const std::string& n) { return n == "fitting_equal" || n == "compatibility"; });
    std::size_t free = count_failed(rep, [](const std::string& n) { return n == "basis_generates"; });
    std::size_t indep = count_failed(rep, [](const std::string& n) { return n == "vertex_independent"; });
    std::snprintf(buf, sizeof buf, "%zu instances (%zu with a proper Fitting ideal): %zu Fitting, %zu freeness, %zu vertex-independence failures, %.1f s",
                  rep.records.size(), proper, fit, free, indep, el);
    results[6] = {fit == 0 && free == 0 && indep == 0 && rep.records.size() == 300 && proper > 0, buf};
  }
  results[7] = ring_lemma_outcome();
  results[8] = micro_examples();
  {
    FuzzConfig cfg = base_config(kSuites, 10);
    cfg.seed = 99;
    std::string a = run_fuzz(cfg).to_json().dump(2), b = run_fuzz(cfg).to_json().dump(2);
    std::snprintf(buf, sizeof buf, "two runs of every suite, seed 99, 10 trials each: %zu bytes, %s", a.size(),
                  a == b ? "identical" : "different");
    results[9] = {a == b, buf};
  }

  static const char* names[] = {"",
                                "pairing coincidence",
                                "pairing well-definedness and symmetry",
                                "Bockstein diagram",
                                "cokernel isomorphisms",
                                "structure recovery",
                                "Stark systems and Fitting ideals",
                                "ring lemmas",
                                "worked examples",
                                "determinism"};
  bool all = true;
  for (int i = 1; i <= 9; ++i) {
    std::printf("%s criterion %d (%s): %s\n", results[i].pass ? "PASS" : "FAIL", i, names[i], results[i].summary.c_str());
    all = all && results[i].pass;
  }
  return all ? 0 : 1;
}
