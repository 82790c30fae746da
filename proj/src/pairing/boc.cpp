#include "bockstein/pairing.hpp"

namespace bockstein {

BocPairing::BocPairing(const PairingData& data, std::size_t k)
    : data_(&data), k_(k), complex_(data.complex()), s_piece_(data.s_piece(k)), t_piece_(data.t_piece(k)) {
  const RingCtx& ctx = data.ctx();
  const int ki = static_cast<int>(k);
  psi_ = generalized_bockstein(complex_, ki);
  GroupRingElt norm = norm_element(ctx);
  norm_x_ = std::make_shared<Solver>(scalar_action(norm, data.rank_x()));
  norm_y_ = std::make_shared<Solver>(scalar_action(norm, data.rank_y()));
  zk_ = page_cycles(complex_, ki, 0, 1).num();
  zk_rows_ = zk_.rows();
  ix_ = complex_.piece(1, 1).num();
  relift_ = std::make_shared<Solver>(vstack(zk_, ix_));
}

Vec BocPairing::bockstein_class(std::span<const Residue> s) const {
  if (!s_piece_.contains(s)) throw PairingError("membership", "s outside the filtration piece");
  // N: H^1(C/IC) -> S_0 is an isomorphism; the preimage is unique modulo I X
  auto a = norm_x_->solve(s);
  if (!a) throw PairingError("lift-not-found", "s is not a norm");
  // E_k^{0,1} is the image of H^1(C/I^k C) in H^1(C/IC): pick a representative in Z_k^{0,1}
  Vec canon = reduce_mod(ix_, *a);
  auto c = relift_->solve(canon);
  if (!c) throw PairingError("lift-not-found", "class of s is not in E_k^{0,1}");
  c->resize(zk_rows_);
  Vec zrep = zk_.apply(*c);
  return psi_.apply(zrep);
}

Vec BocPairing::norm_lift(std::span<const Residue> t) const {
  if (!t_piece_.contains(t)) throw PairingError("membership", "t outside the filtration piece");
  auto y = norm_y_->solve(t);
  if (!y) throw PairingError("lift-not-found", "t is not a norm");
  return *y;
}

PairingValue BocPairing::value(std::span<const Residue> w, std::span<const Residue> y) const {
  // w in I^k Y* acts on Y/IY = Y_0 with values in Q^k: coefficientwise convolution of w_j and y_j
  const RingCtx& ctx = data_->ctx();
  const Zpn& z = ctx.scalars();
  const std::size_t q = ctx.order();
  Vec coeffs(q, 0);
  for (std::size_t j = 0; j < data_->rank_y(); ++j)
    for (std::size_t a = 0; a < q; ++a) {
      Residue wa = w[j * q + a];
      if (wa == 0) continue;
      for (std::size_t b = 0; b < q; ++b) {
        std::size_t m = (a + b) % q;
        coeffs[m] = z.add(coeffs[m], z.mul(wa, y[j * q + b]));
      }
    }
  GroupRingElt v(ctx, std::move(coeffs));
  PairingValue out;
  out.k = k_;
  out.value = graded_class(ctx, k_, v);
  out.scalar = graded_scalar(ctx, k_, v);
  return out;
}

PairingValue boc_pairing(const PairingData& data, std::size_t k, std::span<const Residue> s,
                         std::span<const Residue> t) {
  return BocPairing(data, k)(s, t);
}

}  // namespace bockstein
