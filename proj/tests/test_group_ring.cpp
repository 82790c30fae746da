#include <map>
#include <set>

#include "bockstein/group_ring.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bockstein;

namespace {

std::vector<GroupRingElt> all_elements(const RingCtx& ctx) {
  std::vector<GroupRingElt> out;
  for (auto& v : oracle::all_vectors(ctx.scalars(), ctx.order())) out.emplace_back(ctx, v);
  return out;
}

GroupRingElt elt(const RingCtx& ctx, Vec c) { return {ctx, std::move(c)}; }

const std::vector<std::pair<std::uint64_t, int>> kRings{{3, 1}, {3, 2}, {5, 1}, {5, 2}, {7, 1}, {7, 2}};

}  // namespace

TEST_CASE("derivative operators at (3,1)") {
  RingCtx ctx(3, 1);
  CHECK(derivative_op(ctx, 0) == norm_element(ctx));
  CHECK(derivative_op(ctx, 1) == elt(ctx, {2, 1, 0}));
  CHECK(gamma_minus_one(ctx) * derivative_op(ctx, 1) == norm_element(ctx));
  CHECK_THROWS_AS(derivative_op(ctx, 3), std::out_of_range);
}

TEST_CASE("derivative relation below p") {
  for (auto [p, n] : kRings) {
    RingCtx ctx(p, n);
    for (std::size_t k = 1; k + 1 <= p; ++k)
      CHECK(gamma_minus_one(ctx) * derivative_op(ctx, k) == derivative_op(ctx, k - 1));
  }
}

TEST_CASE("augmentation ideal powers at (3,1) by enumeration") {
  RingCtx ctx(3, 1);
  auto ring = all_elements(ctx);
  REQUIRE(ring.size() == 27);
  for (std::size_t k = 0; k <= 3; ++k) {
    std::set<Vec> brute;
    GroupRingElt g = gamma_minus_one(ctx).pow(k);
    for (const auto& x : ring) brute.insert((g * x).coeffs());
    Mat basis = aug_ideal_power(ctx, k);
    CHECK(oracle::span(basis) == brute);
  }
  CHECK(span_log_card(aug_ideal_power(ctx, 1)) == 2);
  CHECK(span_log_card(aug_ideal_power(ctx, 2)) == 1);
  CHECK(aug_ideal_power(ctx, 3).rows() == 0);
  CHECK(aug_ideal_power(ctx, 0) == Mat::identity(ctx.scalars(), 3));
  CHECK(oracle::span(aug_ideal_power(ctx, 2)) == oracle::span(regular_rep(norm_element(ctx))));
}

TEST_CASE("graded scalar") {
  RingCtx ctx(3, 1);
  CHECK(graded_scalar(ctx, 1, gamma_minus_one(ctx)) == 1);
  CHECK(graded_scalar(ctx, 2, gamma_minus_one(ctx).pow(2)) == 1);
  CHECK(graded_scalar(ctx, 1, GroupRingElt::zero(ctx)) == 0);
  CHECK(graded_scalar(ctx, 2, norm_element(ctx).scaled(2)) == 2);
  CHECK_THROWS_AS(graded_scalar(ctx, 3, GroupRingElt::zero(ctx)), std::invalid_argument);
  CHECK_THROWS_AS(graded_scalar(ctx, 1, GroupRingElt::one(ctx)), std::invalid_argument);
  CHECK(graded_class(ctx, 1, gamma_minus_one(ctx) + norm_element(ctx)) == graded_class(ctx, 1, gamma_minus_one(ctx)));
}

TEST_CASE("graded pieces are free of rank one below p") {
  // exhaustively at (3,1): every class of Q^k is hit exactly once by graded_scalar
  RingCtx small(3, 1);
  auto ring = all_elements(small);
  for (std::size_t k = 1; k <= 2; ++k) {
    std::map<Vec, Residue> classes;
    for (const auto& x : ring) {
      GroupRingElt y = gamma_minus_one(small).pow(k) * x;
      auto cls = graded_class(small, k, y).representative.coeffs();
      Residue s = graded_scalar(small, k, y);
      auto [it, fresh] = classes.emplace(cls, s);
      if (!fresh) CHECK(it->second == s);
    }
    CHECK(classes.size() == 3);
    std::set<Residue> values;
    for (auto& [c, s] : classes) values.insert(s);
    CHECK(values.size() == 3);
  }
  for (auto [p, n] : kRings) {
    RingCtx ctx(p, n);
    for (std::size_t k = 1; k + 1 <= p; ++k) {
      int q = span_log_card(aug_ideal_power(ctx, k)) - span_log_card(aug_ideal_power(ctx, k + 1));
      CHECK(q == n);
      for (Residue c = 0; c < ctx.scalars().modulus(); c += 1 + ctx.scalars().modulus() / 5)
        CHECK(graded_scalar(ctx, k, gamma_minus_one(ctx).pow(k).scaled(c)) == c);
    }
  }
}

TEST_CASE("regular representation") {
  RingCtx ctx(3, 1);
  CHECK(regular_rep(GroupRingElt::one(ctx)) == Mat::identity(ctx.scalars(), 3));
  CHECK(regular_rep(GroupRingElt::gamma_power(ctx, 1)) == Mat::from_rows(ctx.scalars(), 3, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
  Mat ones(ctx.scalars(), 3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) ones.at(i, j) = 1;
  CHECK(regular_rep(norm_element(ctx)) == ones);

  SplitMix64 g(5);
  for (auto [p, n] : kRings) {
    RingCtx c(p, n);
    for (int t = 0; t < 200; ++t) {
      auto x = oracle::random_elt(g, c), y = oracle::random_elt(g, c);
      CHECK(regular_rep(x * y) == regular_rep(x) * regular_rep(y));
      CHECK((regular_rep(x) == regular_rep(y)) == (x == y));
      CHECK((x * y).augmentation() == c.scalars().mul(x.augmentation(), y.augmentation()));
      CHECK(x * y == y * x);
    }
  }
}

TEST_CASE("units and substitution") {
  SplitMix64 g(6);
  for (auto [p, n] : kRings) {
    RingCtx ctx(p, n);
    for (int t = 0; t < 50; ++t) {
      auto x = oracle::random_elt(g, ctx);
      if (x.is_unit()) CHECK(x * x.inverse() == GroupRingElt::one(ctx));
      auto y = oracle::random_elt(g, ctx);
      CHECK((x * y).substitute(2) == x.substitute(2) * y.substitute(2));
    }
  }
}

TEST_CASE("derivative kernels on free modules") {
  // D^(k-1) M = ker (gamma-1)^k and I^k M = ker D^(k-1) for M = R^d
  for (auto [p, n] : kRings) {
    RingCtx ctx(p, n);
    for (std::size_t d = 1; d <= 2; ++d) {
      for (std::size_t k = 1; k + 1 <= p; ++k) {
        Mat dk1 = scalar_action(derivative_op(ctx, k - 1), d);
        Mat gk = scalar_action(gamma_minus_one(ctx).pow(k), d);
        CHECK(howell_form(dk1) == kernel(gk));
        CHECK(howell_form(gk) == kernel(dk1));
      }
    }
  }
  // exhaustively at (3,1), d = 2
  RingCtx ctx(3, 1);
  auto vecs = oracle::all_vectors(ctx.scalars(), 6);
  for (std::size_t k = 1; k <= 2; ++k) {
    Mat dk1 = scalar_action(derivative_op(ctx, k - 1), 2);
    Mat gk = scalar_action(gamma_minus_one(ctx).pow(k), 2);
    std::set<Vec> ker_g, ker_d, im_g, im_d;
    for (const auto& v : vecs) {
      if (is_zero(gk.apply(v))) ker_g.insert(v);
      if (is_zero(dk1.apply(v))) ker_d.insert(v);
      im_g.insert(gk.apply(v));
      im_d.insert(dk1.apply(v));
    }
    CHECK(im_d == ker_g);
    CHECK(im_g == ker_d);
  }
}
