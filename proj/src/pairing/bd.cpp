#include "bockstein/pairing.hpp"

namespace bockstein {

namespace {

void add_random_kernel(SplitMix64& rng, const Mat& kernel, Vec& v) {
  const Zpn& z = kernel.ring();
  for (std::size_t r = 0; r < kernel.rows(); ++r) {
    Residue c = rng.below(z.modulus());
    if (c != 0) v = vec_add(z, v, vec_scale(z, c, kernel.row(r)));
  }
}

}  // namespace

BdPairing::BdPairing(const PairingData& data, std::size_t k, SplitMix64* rng, std::int64_t u)
    : data_(&data), k_(k), rng_(rng) {
  const RingCtx& ctx = data.ctx();
  GroupRingElt g1 = GroupRingElt::gamma_power(ctx, u) - GroupRingElt::one(ctx);
  GroupRingElt power = g1.pow(k - 1);
  GroupRingElt deriv = derivative_op(ctx, k - 1, u);
  auto side = [&](const Module& m, Module piece, std::size_t rank) {
    Side s;
    s.piece = std::move(piece);
    s.module_rows = m.num();
    s.tilde = std::make_shared<Solver>(m.num() * scalar_action(power, rank));
    s.deriv = std::make_shared<Solver>(scalar_action(deriv, rank));
    return s;
  };
  s_side_ = side(data.s(), data.s_piece(k), data.rank_x());
  t_side_ = side(data.t(), data.t_piece(k), data.rank_y());
}

Vec BdPairing::lift(const Side& side, std::span<const Residue> v, const char* what) const {
  if (!side.piece.contains(v)) throw PairingError("membership", std::string(what) + " outside the filtration piece");
  auto c = side.tilde->solve(v);
  if (!c) throw PairingError("lift-not-found", std::string(what) + " has no (gamma-1)^(k-1) preimage");
  if (rng_) add_random_kernel(*rng_, side.tilde->kernel(), *c);
  Vec tilde = side.module_rows.apply(*c);
  auto x = side.deriv->solve(tilde);
  if (!x) throw PairingError("lift-not-found", std::string(what) + " has no D^(k-1) preimage");
  if (rng_) add_random_kernel(*rng_, side.deriv->kernel(), *x);
  return *x;
}

Vec BdPairing::lift_s(std::span<const Residue> s) const { return lift(s_side_, s, "s"); }
Vec BdPairing::lift_t(std::span<const Residue> t) const { return lift(t_side_, t, "t"); }

PairingValue BdPairing::value(std::span<const Residue> x, std::span<const Residue> y) const {
  const RingCtx& ctx = data_->ctx();
  auto lx = unflatten(ctx, data_->ell().apply(x));
  auto ys = unflatten(ctx, y);
  GroupRingElt acc = GroupRingElt::zero(ctx);
  for (std::size_t j = 0; j < lx.size(); ++j) acc = acc + lx[j] * ys[j];
  PairingValue out;
  out.k = k_;
  out.value = graded_class(ctx, k_, acc);
  out.scalar = graded_scalar(ctx, k_, acc);
  return out;
}

PairingValue bd_pairing(const PairingData& data, std::size_t k, std::span<const Residue> s,
                        std::span<const Residue> t) {
  return BdPairing(data, k)(s, t);
}

}  // namespace bockstein
