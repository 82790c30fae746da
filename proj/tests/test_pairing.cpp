#include <set>

#include "bockstein/pairing.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bockstein;

namespace {

PairingData one_by_one(const RingCtx& ctx, const GroupRingElt& e) {
  return PairingData(ctx, 1, 1, expand_matrix(ctx, {{e}}));
}

std::vector<GroupRingElt> ring_elements(const RingCtx& ctx) {
  std::vector<GroupRingElt> out;
  for (auto& v : oracle::all_vectors(ctx.scalars(), ctx.order())) out.emplace_back(ctx, v);
  return out;
}

// Every value l x y over all admissible lifts for X = Y = R and l = multiplication by e.
std::set<Vec> brute_values(const RingCtx& ctx, const GroupRingElt& e, std::size_t k, const GroupRingElt& s) {
  auto ring = ring_elements(ctx);
  GroupRingElt g1 = gamma_minus_one(ctx);
  GroupRingElt d = derivative_op(ctx, k - 1);
  std::vector<GroupRingElt> xs;
  for (const auto& tilde : ring) {
    if (!(e * tilde).is_zero() || !(g1.pow(k - 1) * tilde == s)) continue;
    for (const auto& x : ring)
      if (d * x == tilde) xs.push_back(x);
  }
  std::set<Vec> out;
  for (const auto& x : xs)
    for (const auto& y : xs) out.insert(graded_class(ctx, k, e * x * y).representative.coeffs());
  return out;
}

}  // namespace

TEST_CASE("validation") {
  RingCtx ctx(3, 1);
  auto id = one_by_one(ctx, GroupRingElt::one(ctx));
  CHECK(id.s().is_zero());
  CHECK(id.t_dual().is_zero());
  auto zero = PairingData(ctx, 2, 1, Mat(ctx.scalars(), 6, 3));
  CHECK(zero.s().log_card() == 6);
  CHECK(zero.t().log_card() == 3);

  Mat bad = expand_matrix(ctx, {{gamma_minus_one(ctx)}});
  bad.at(1, 0) = ctx.scalars().add(bad.at(1, 0), 1);
  try {
    PairingData d(ctx, 1, 1, bad);
    FAIL("accepted a map that does not commute with gamma");
  } catch (const PairingError& e) {
    CHECK(e.code() == "adjunction-failure");
    CHECK(e.position() == "ell block (0,0)");
  }

  SplitMix64 g(41);
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{{3, 1}, {3, 2}, {5, 1}}) {
    RingCtx c(p, n);
    for (int trial = 0; trial < 20; ++trial) {
      std::size_t a = 1 + g.below(3), b = 1 + g.below(3);
      CHECK_NOTHROW(PairingData(c, a, b, random_ell(g, c, a, b)));
    }
  }
}

TEST_CASE("worked value for l = gamma - 1") {
  RingCtx ctx(3, 1);
  GroupRingElt e = gamma_minus_one(ctx);
  GroupRingElt n = norm_element(ctx);
  auto brute = brute_values(ctx, e, 1, n);
  REQUIRE(brute.size() == 1);
  CHECK(*brute.begin() == graded_class(ctx, 1, e).representative.coeffs());

  auto data = one_by_one(ctx, e);
  CHECK(data.s_piece(1) == data.s().with_num(howell_form(regular_rep(n))));
  auto bd = bd_pairing(data, 1, n.coeffs(), n.coeffs());
  auto boc = boc_pairing(data, 1, n.coeffs(), n.coeffs());
  CHECK(bd.scalar == 1);
  CHECK(boc.scalar == 1);
  CHECK(bd.value.representative.coeffs() == *brute.begin());
  CHECK(bd == boc);
}

TEST_CASE("worked value for l = N") {
  RingCtx ctx(3, 1);
  GroupRingElt n = norm_element(ctx);
  auto brute = brute_values(ctx, n, 2, n);
  REQUIRE(brute.size() == 1);
  CHECK(*brute.begin() == n.coeffs());

  auto data = one_by_one(ctx, n);
  auto bd = bd_pairing(data, 2, n.coeffs(), n.coeffs());
  auto boc = boc_pairing(data, 2, n.coeffs(), n.coeffs());
  CHECK(bd.scalar == 1);
  CHECK(boc.scalar == 1);
  CHECK(bd.value.representative.coeffs() == *brute.begin());
  CHECK(bd == boc);
  auto rep = compare(data, 2);
  CHECK(rep.pass());
  bool k2 = false;
  for (const auto& r : rep.records) k2 = k2 || (r.k == 2 && r.bd.scalar == 1);
  CHECK(k2);
}

TEST_CASE("zero arguments and argument errors") {
  RingCtx ctx(3, 1);
  auto data = one_by_one(ctx, gamma_minus_one(ctx));
  Vec zero(3, 0), n = norm_element(ctx).coeffs();
  CHECK(bd_pairing(data, 1, zero, n).scalar == 0);
  CHECK(boc_pairing(data, 1, zero, n).scalar == 0);
  CHECK(bd_pairing(data, 1, n, zero).scalar == 0);
  try {
    bd_pairing(data, 1, Vec{1, 0, 0}, n);
    FAIL("accepted s outside S");
  } catch (const PairingError& e) {
    CHECK(e.code() == "membership");
  }
  CHECK_THROWS_AS(bd_pairing(data, 3, n, n), PairingError);
  CHECK_THROWS_AS(boc_pairing(data, 0, n, n), PairingError);
}

TEST_CASE("filtration pieces are exactly the liftable elements") {
  RingCtx ctx(3, 1);
  SplitMix64 g(42);
  GroupRingElt g1 = gamma_minus_one(ctx);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t a = 1 + g.below(2), b = 1;
    PairingData data(ctx, a, b, random_ell(g, ctx, a, b));
    auto s_elems = oracle::span(data.s().num());
    for (std::size_t k = 1; k <= 2; ++k) {
      Mat pk = scalar_action(g1.pow(k - 1), a);
      Mat dk = scalar_action(derivative_op(ctx, k - 1), a);
      auto d_image = oracle::span(dk);
      for (const auto& s : s_elems) {
        bool chain = false;
        for (const auto& tilde : s_elems)
          if (pk.apply(tilde) == s && d_image.count(tilde)) chain = true;
        CHECK(data.s_piece(k).contains(s) == chain);
      }
    }
  }
}

TEST_CASE("both pairings agree on random data") {
  SplitMix64 g(43);
  std::size_t nontrivial = 0, higher = 0;
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{{3, 1}, {3, 2}, {5, 1}}) {
    RingCtx ctx(p, n);
    for (int trial = 0; trial < 30; ++trial) {
      std::size_t a = 1 + g.below(3), b = 1 + g.below(3);
      PairingData data(ctx, a, b, random_ell(g, ctx, a, b));
      CompareOptions opts;
      opts.seed = g.next();
      auto rep = compare(data, p - 1, opts);
      CHECK(rep.equal == rep.evaluations);
      CHECK(rep.symmetric == rep.evaluations);
      CHECK(rep.stable == rep.evaluations);
      CHECK(rep.bilinear);
      for (const auto& r : rep.records) {
        if (r.bd.scalar == 0) continue;
        ++nontrivial;
        if (r.k >= 2) ++higher;
      }
    }
  }
  CHECK(nontrivial > 0);
  CHECK(higher > 0);
}
