#include "bockstein/structure.hpp"
#include "doctest.h"
#include "bockstein/rng.hpp"

using namespace bockstein;

namespace {

IntComplex make(std::uint64_t p, const std::vector<std::vector<BigInt>>& rows) { return {p, IntMat::from_rows(rows)}; }

IntComplex random_complex(SplitMix64& g, std::uint64_t p) {
  std::size_t a = 1 + g.below(5), b = 1 + g.below(5);
  IntMat d(a, b);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) d.at(i, j) = static_cast<int>(g.below(101)) - 50;
  return {p, d};
}

// tau_k = free rank + #{elementary divisors of valuation > k}
std::vector<int> tau_from_smith(const IntComplex& c, std::size_t kmax) {
  Structure s = snf_oracle(c);
  std::vector<int> out;
  for (std::size_t k = 0; k <= kmax; ++k) {
    int t = static_cast<int>(s.free_rank);
    for (std::size_t v = k + 1; v <= s.multiplicities.size(); ++v) t += static_cast<int>(s.multiplicities[v - 1]);
    out.push_back(t);
  }
  return out;
}

// multiply by a random unimodular matrix built from elementary operations
IntMat scramble(SplitMix64& g, const IntMat& m, bool rows) {
  IntMat out = m;
  const std::size_t n = rows ? m.rows() : m.cols();
  if (n < 2) return out;
  for (int step = 0; step < 6; ++step) {
    std::size_t i = g.below(n), j = g.below(n);
    if (i == j) continue;
    BigInt f = static_cast<int>(g.below(7)) - 3;
    if (rows)
      for (std::size_t c = 0; c < m.cols(); ++c) out.at(i, c) += f * out.at(j, c);
    else
      for (std::size_t r = 0; r < m.rows(); ++r) out.at(r, i) += f * out.at(r, j);
  }
  return out;
}

}  // namespace

TEST_CASE("diag(p, p^2)") {
  for (std::uint64_t p : {2, 3, 5}) {
    BigInt pp = p;
    auto c = make(p, {{pp, 0}, {0, pp * pp}});
    auto prof = tau_sequence(c, 4);
    CHECK(prof.taus == std::vector<int>{2, 1, 0, 0, 0});
    CHECK(prof.k0 == 2);
    Structure s = recover_structure(prof);
    CHECK(s.free_rank == 0);
    CHECK(s.multiplicities == std::vector<std::size_t>{1, 1});
    CHECK(s == snf_oracle(c));
  }
}

TEST_CASE("zero and unimodular differentials") {
  auto zero = make(3, {{0}});
  auto prof = tau_sequence(zero, 3);
  CHECK(prof.taus == std::vector<int>{1, 1, 1, 1});
  CHECK(prof.k0 == 1);
  CHECK(recover_structure(prof) == Structure{1, {}});

  auto id = make(3, {{1, 0}, {0, 1}});
  CHECK(tau_sequence(id).taus == std::vector<int>{0, 0});
  CHECK(recover_structure(tau_sequence(id)) == Structure{});

  // more columns than rows leaves a free part
  auto wide = make(5, {{5, 0, 0}});
  CHECK(recover_structure(tau_sequence(wide)) == Structure{2, {1}});
}

TEST_CASE("non-diagonal torsion") {
  auto c = make(3, {{3, 3}, {0, 9}});
  Structure s = recover_structure(tau_sequence(c));
  CHECK(s == Structure{0, {1, 1}});
  CHECK(s == snf_oracle(c));
  // the prime-to-p part is invisible
  auto d = make(3, {{2, 0}, {0, 18}});
  CHECK(recover_structure(tau_sequence(d)) == Structure{0, {0, 1}});
}

TEST_CASE("malformed profiles are rejected") {
  CHECK_THROWS_AS(recover_structure({{1, 2, 2}, 1}), std::invalid_argument);
  CHECK_THROWS_AS(recover_structure({{3, 2, 1}, 2}), std::invalid_argument);
  CHECK_THROWS_AS(recover_structure({{1}, 1}), std::invalid_argument);
  CHECK(recover_structure({{2, 1, 0, 0}, 2}) == Structure{0, {1, 1}});
}

TEST_CASE("valuation bound dominates the elementary divisors") {
  SplitMix64 g(51);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5}[trial % 3];
    auto c = random_complex(g, p);
    CHECK(static_cast<std::size_t>(valuation_bound(c)) >= snf_oracle(c).multiplicities.size());
  }
}

TEST_CASE("recovery against the Smith form") {
  SplitMix64 g(52);
  std::size_t torsion = 0;
  for (std::uint64_t p : {2, 3, 5}) {
    for (int trial = 0; trial < 150; ++trial) {
      auto c = random_complex(g, p);
      auto prof = tau_sequence(c);
      CHECK(prof.taus == tau_from_smith(c, prof.taus.size() - 1));
      Structure s = recover_structure(prof);
      CHECK(s == snf_oracle(c));
      if (!s.multiplicities.empty()) ++torsion;
    }
  }
  CHECK(torsion > 40);
}

TEST_CASE("tau is invariant under unimodular changes") {
  SplitMix64 g(53);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5}[trial % 3];
    auto c = random_complex(g, p);
    IntComplex c2{p, scramble(g, scramble(g, c.d, true), false)};
    std::size_t kmax = static_cast<std::size_t>(std::max(valuation_bound(c), valuation_bound(c2))) + 1;
    CHECK(tau_sequence(c, kmax).taus == tau_sequence(c2, kmax).taus);
  }
}
