#include <set>

#include "bockstein/pairing.hpp"
#include "bockstein/stark.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bockstein;

namespace {

StarkInstance instance(const RingCtx& ctx, const oracle::RMatrix& ell) {
  return build_instance(ctx, ell.empty() ? 0 : ell[0].size(), expand_matrix(ctx, ell));
}

Ideal ideal(const RingCtx& ctx, const GroupRingElt& g) { return Ideal::generated(ctx, {g}); }

}  // namespace

TEST_CASE("identity localization") {
  RingCtx ctx(3, 1);
  auto one = GroupRingElt::one(ctx), zero = GroupRingElt::zero(ctx);
  auto inst = instance(ctx, {{one, zero}, {zero, one}});
  CHECK(inst.chi() == 0);
  CHECK(inst.vertex_module(0).is_zero());
  CHECK(inst.w_dual().is_zero());
  auto sys = stark_from_basis(inst, canonical_basis(inst));
  // epsilon at the empty vertex is a unit of R
  CHECK(image_ideal(inst, sys.entries.at(0)) == Ideal::whole(ctx));
  for (std::size_t i = 0; i <= 2; ++i) CHECK(ideal_I(sys, i) == Ideal::whole(ctx));
  for (const auto& row : verify_fitting(inst, sys, 2)) CHECK(row.equal);
  CHECK(check_compatibility(sys).ok());
}

TEST_CASE("localization by the norm") {
  RingCtx ctx(3, 1);
  auto n = norm_element(ctx);
  auto inst = instance(ctx, {{n}});
  CHECK(inst.chi() == 0);
  // H(empty) = ker N = I, W* = R/NR
  CHECK(inst.vertex_module(0).num() == howell_form(regular_rep(gamma_minus_one(ctx))));
  CHECK(inst.w_dual().log_card() == 2);
  auto sys = stark_from_basis(inst, canonical_basis(inst));
  CHECK(ideal_I(sys, 0) == ideal(ctx, n));
  CHECK(ideal_I(sys, 1) == Ideal::whole(ctx));
  for (const auto& row : verify_fitting(inst, sys, 1)) CHECK(row.equal);
  CHECK_THROWS_AS(stark_from_basis(inst, Vec{0, 0, 0}), StarkError);
}

TEST_CASE("diagonal localization") {
  RingCtx ctx(3, 1);
  auto n = norm_element(ctx), one = GroupRingElt::one(ctx), zero = GroupRingElt::zero(ctx);
  auto inst = instance(ctx, {{n, zero}, {zero, one}});
  // H(q1) = ker(X -> L_q2) = R + 0, against enumeration
  std::set<Vec> brute;
  for (const auto& v : oracle::all_vectors(ctx.scalars(), 6))
    if (v[3] == 0 && v[4] == 0 && v[5] == 0) brute.insert(v);
  CHECK(oracle::span(inst.vertex_module(1).num()) == brute);
  CHECK(inst.is_core_vertex(3));
  auto sys = stark_from_basis(inst, canonical_basis(inst));
  auto rows = verify_fitting(inst, sys, 2);
  CHECK(rows[0].fitting == ideal(ctx, n));
  CHECK(rows[1].fitting == Ideal::whole(ctx));
  for (const auto& row : rows) CHECK(row.equal);
}

TEST_CASE("rejected instances") {
  RingCtx ctx(3, 1);
  auto one = GroupRingElt::one(ctx);
  try {
    instance(ctx, {{one, one}});
    FAIL("negative core rank accepted");
  } catch (const StarkError& e) {
    CHECK(e.code() == "not-a-core-vertex");
  }
  Mat bad = expand_matrix(ctx, {{gamma_minus_one(ctx)}});
  bad.at(0, 0) = 1;
  CHECK_THROWS_AS(build_instance(ctx, 1, bad), StarkError);
}

TEST_CASE("random instances") {
  SplitMix64 g(51);
  std::size_t proper = 0;
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{{3, 1}, {3, 2}, {5, 1}}) {
    RingCtx ctx(p, n);
    for (int trial = 0; trial < 8; ++trial) {
      std::size_t r = 1 + g.below(2);
      std::size_t a = r + g.below(2);
      auto inst = build_instance(ctx, r, random_ell(g, ctx, a, r));
      auto sys = stark_from_basis(inst, canonical_basis(inst));
      CHECK(check_compatibility(sys).ok());
      for (const auto& row : verify_fitting(inst, sys, a)) CHECK_MESSAGE(row.equal, "i = " << row.i);
      for (std::size_t i = 0; i < r; ++i) CHECK(ideal_I(sys, i + 1).contains(ideal_I(sys, i)));
      if (!(ideal_I(sys, 0) == Ideal::whole(ctx))) ++proper;
      CHECK(stark_module_log_card(inst) == static_cast<int>(ctx.order()) * n);
      CHECK(stark_map_bijective(inst));
      std::vector<GroupRingElt> c;
      for (std::size_t j = 0; j < r; ++j) c.push_back(oracle::random_small(g, ctx));
      CHECK(vertex_independent(inst, c));
      CHECK(extend_instance(inst, c).is_core_vertex(extend_instance(inst, c).full()));
      // a unit multiple of the basis gives the same ideals
      auto u = GroupRingElt::gamma_power(ctx, 1) + GroupRingElt::constant(ctx, p);
      auto core = inst.bidual(inst.full());
      auto sys2 = stark_from_basis(inst, core->module().act(u).apply(canonical_basis(inst)));
      for (std::size_t i = 0; i <= r; ++i) CHECK(ideal_I(sys2, i) == ideal_I(sys, i));
    }
  }
  CHECK(proper > 3);
}
