#include <cmath>
#include <numeric>
#include <omp.h>

#include "bockstein/intmat.hpp"
#include "bockstein/linalg.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bockstein;

namespace {

// Shape conditions that make a Howell form canonical.
void check_canonical(const Mat& h) {
  const Zpn& z = h.ring();
  auto pc = pivot_columns(h);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    REQUIRE(pc[i] < h.cols());
    if (i > 0) CHECK(pc[i] > pc[i - 1]);
    Residue piv = h.at(i, pc[i]);
    CHECK(piv == z.pow_p(z.valuation(piv)));
    for (std::size_t k = 0; k < i; ++k) CHECK(h.at(k, pc[i]) < piv);
  }
  CHECK(howell_form(h) == h);
}

const std::vector<std::pair<std::uint64_t, int>> kRings{{3, 1}, {3, 2}, {5, 1}};

}  // namespace

TEST_CASE("howell form of small fixed matrices") {
  Zpn z9(3, 2);
  CHECK(howell_form(Mat::identity(z9, 3)) == Mat::identity(z9, 3));

  Zpn z4(2, 2);
  Mat two = Mat::from_rows(z4, 1, {{2}});
  CHECK(howell_form(two) == two);

  Mat m = Mat::from_rows(z4, 2, {{2, 1}, {0, 2}});
  Mat h = howell_form(m);
  check_canonical(h);
  CHECK(oracle::span(h) == oracle::span(m));
  // span = {(0,0), (0,2), (2,1), (2,3)}
  CHECK(oracle::span(m).size() == 4);
  CHECK(span_log_card(h) == 2);
  CHECK(h == Mat::from_rows(z4, 2, {{2, 1}, {0, 2}}));
}

TEST_CASE("howell form preserves spans on random matrices") {
  SplitMix64 g(101);
  for (auto [p, n] : kRings) {
    Zpn z(p, n);
    for (int trial = 0; trial < 500; ++trial) {
      std::size_t rows = 1 + g.below(4), cols = 1 + g.below(4);
      Mat m = trial % 2 ? oracle::random_mat(g, z, rows, cols) : oracle::random_mat_valued(g, z, rows, cols);
      Mat h = howell_form(m);
      check_canonical(h);
      REQUIRE(howell_form_serial(m) == h);
      auto sm = oracle::span(m);
      if (sm.empty()) continue;
      auto sh = oracle::span(h);
      REQUIRE(sm == sh);
      CHECK(static_cast<double>(sm.size()) == doctest::Approx(std::pow(static_cast<double>(p), span_log_card(h))));
    }
  }
}

TEST_CASE("kernel") {
  Zpn z(3, 2);
  Mat p = Mat::from_rows(z, 1, {{3}});
  CHECK(kernel(p) == Mat::from_rows(z, 1, {{3}}));
  CHECK(kernel(Mat::identity(z, 3)).rows() == 0);

  SplitMix64 g(7);
  for (int trial = 0; trial < 20; ++trial) {
    Mat m = oracle::random_mat_valued(g, z, 3, 3);
    std::set<Vec> brute;
    for (const auto& v : oracle::all_vectors(z, 3))
      if (is_zero(m.apply(v))) brute.insert(v);
    Mat k = kernel(m);
    CHECK(oracle::span(k) == brute);
  }
}

TEST_CASE("kernel commutes with canonicalization") {
  // the annihilator {x : M x^T = 0} depends only on the row span of M
  SplitMix64 g(8);
  for (auto [p, n] : kRings) {
    Zpn z(p, n);
    for (int trial = 0; trial < 100; ++trial) {
      Mat m = oracle::random_mat_valued(g, z, 3, 4);
      Mat h = howell_form(m);
      CHECK(kernel(h.transpose()) == kernel(m.transpose()));
      Mat k = kernel(m);
      for (std::size_t i = 0; i < k.rows(); ++i) CHECK(is_zero(m.apply(k.row(i))));
      CHECK(span_log_card(k) == 3 * n - span_log_card(h));
      CHECK(howell_form(k) == k);
    }
  }
}

TEST_CASE("solve") {
  Zpn z(3, 2);
  Mat id = Mat::identity(z, 3);
  Vec b{4, 0, 8};
  CHECK(solve(id, b) == b);
  Mat p = Mat::from_rows(z, 1, {{3}});
  CHECK_FALSE(solve(p, Vec{1}).has_value());
  auto v = solve(p, Vec{3});
  REQUIRE(v.has_value());
  CHECK(p.apply(*v) == Vec{3});

  SplitMix64 g(9);
  for (int trial = 0; trial < 30; ++trial) {
    Mat m = oracle::random_mat_valued(g, z, 2, 3);
    auto sp = oracle::span(m);
    Solver s(m);
    for (const auto& w : oracle::all_vectors(z, 3)) {
      auto sol = s.solve(w);
      REQUIRE(sol.has_value() == (sp.count(w) == 1));
      if (sol) CHECK(m.apply(*sol) == w);
    }
  }
}

namespace {

BigInt int_det(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt acc = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<BigInt>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<BigInt> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[r][j]);
      minor.push_back(row);
    }
    BigInt t = m[0][c] * int_det(minor);
    acc += c % 2 == 0 ? t : BigInt(-t);
  }
  return acc;
}

BigInt minors_gcd(const IntMat& a, std::size_t k) {
  BigInt g = 0;
  std::vector<bool> rs(a.rows());
  std::fill(rs.end() - static_cast<std::ptrdiff_t>(k), rs.end(), true);
  do {
    std::vector<bool> cs2(a.cols());
    std::fill(cs2.end() - static_cast<std::ptrdiff_t>(k), cs2.end(), true);
    do {
      std::vector<std::vector<BigInt>> sub;
      for (std::size_t i = 0; i < a.rows(); ++i) {
        if (!rs[i]) continue;
        std::vector<BigInt> row;
        for (std::size_t j = 0; j < a.cols(); ++j)
          if (cs2[j]) row.push_back(a.at(i, j));
        sub.push_back(row);
      }
      g = boost::multiprecision::gcd(g, BigInt(abs(int_det(sub))));
    } while (std::next_permutation(cs2.begin(), cs2.end()));
  } while (std::next_permutation(rs.begin(), rs.end()));
  return g;
}

}  // namespace

TEST_CASE("smith form examples") {
  auto r = smith_form_int(IntMat::from_rows({{2, 0}, {0, 6}}));
  CHECK(r.divisors == std::vector<BigInt>{2, 6});
  CHECK(r.coker_free_rank == 0);
  r = smith_form_int(IntMat(2, 2));
  CHECK(r.divisors.empty());
  CHECK(r.coker_free_rank == 2);
  r = smith_form_int(IntMat::from_rows({{4, 2}, {2, 4}}));
  CHECK(r.divisors == std::vector<BigInt>{2, 6});
}

TEST_CASE("smith divisors match gcds of minors") {
  SplitMix64 g(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 3 + (trial % 2);
    IntMat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a.at(i, j) = g.between(-20, 20);
    auto r = smith_form_int(a);
    BigInt prod = 1;
    for (std::size_t k = 1; k <= n; ++k) {
      BigInt gk = minors_gcd(a, k);
      if (k <= r.divisors.size()) {
        prod *= r.divisors[k - 1];
        CHECK(prod == gk);
        if (k > 1) CHECK(r.divisors[k - 1] % r.divisors[k - 2] == 0);
      } else {
        CHECK(gk == 0);
      }
    }
  }
}

TEST_CASE("parallel and serial howell kernels agree on wide matrices") {
  // large enough that the parallel elimination branch is taken
  omp_set_num_threads(4);
  SplitMix64 g(102);
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{{3, 2}, {5, 1}, {2, 5}}) {
    Zpn z(p, n);
    for (std::size_t size : {130, 200}) {
      Mat m = oracle::random_mat_valued(g, z, size, size + 7);
      Mat h = howell_form(m);
      CHECK(howell_form_serial(m) == h);
      check_canonical(h);
    }
  }
}
