#include <string>

#include "bockstein/pairing.hpp"

namespace bockstein {

namespace {

std::string block_name(std::size_t i, std::size_t j) {
  return "ell block (" + std::to_string(i) + "," + std::to_string(j) + ")";
}

// Z/p^n-linear form f_0 on X for the functional f = gamma^j e_i^* of X* = R^a, f_0 = coeff of gamma^0.
Vec coordinate_form(std::size_t rank, std::size_t q, std::size_t i, std::size_t j) {
  Vec col(rank * q, 0);
  col[i * q + (q - j) % q] = 1;
  return col;
}

GroupRingElt r_pairing(const RingCtx& ctx, std::span<const Residue> f, std::span<const Residue> y) {
  auto fs = unflatten(ctx, f);
  auto ys = unflatten(ctx, y);
  GroupRingElt acc = GroupRingElt::zero(ctx);
  for (std::size_t j = 0; j < fs.size(); ++j) acc = acc + fs[j] * ys[j];
  return acc;
}

}  // namespace

PairingData::PairingData(RingCtx ctx, std::size_t rank_x, std::size_t rank_y, Mat ell)
    : ctx_(std::move(ctx)), rank_x_(rank_x), rank_y_(rank_y), ell_(std::move(ell)) {
  const std::size_t q = ctx_.order();
  const Zpn& z = ctx_.scalars();
  if (ell_.rows() != rank_x * q || ell_.cols() != rank_y * q || !(ell_.ring() == z))
    throw std::invalid_argument("PairingData: ell must be (rank_X p^n) x (rank_Y p^n) over Z/p^n");

  // l* exists only for R-linear l: each block must be the matrix of multiplication by an element
  std::vector<std::vector<GroupRingElt>> blocks(rank_x);
  for (std::size_t i = 0; i < rank_x; ++i) {
    for (std::size_t j = 0; j < rank_y; ++j) {
      Vec first(q);
      for (std::size_t c = 0; c < q; ++c) first[c] = ell_.at(i * q, j * q + c);
      GroupRingElt e(ctx_, first);
      Mat rep = regular_rep(e);
      for (std::size_t r = 0; r < q; ++r)
        for (std::size_t c = 0; c < q; ++c)
          if (rep.at(r, c) != ell_.at(i * q + r, j * q + c)) throw PairingError("adjunction-failure", block_name(i, j));
      blocks[i].push_back(std::move(e));
    }
  }
  std::vector<std::vector<GroupRingElt>> transposed(rank_y);
  for (std::size_t j = 0; j < rank_y; ++j)
    for (std::size_t i = 0; i < rank_x; ++i) transposed[j].push_back(blocks[i][j]);
  ell_dual_ = rank_x == 0 || rank_y == 0 ? Mat(z, rank_y * q, rank_x * q) : expand_matrix(ctx_, transposed);

  // l*(y)(x) = l(x)(y) on the Z/p^n-bases of X and Y
  for (std::size_t xi = 0; xi < rank_x * q; ++xi) {
    Vec x(rank_x * q, 0);
    x[xi] = 1;
    Vec lx = ell_.apply(x);
    for (std::size_t yi = 0; yi < rank_y * q; ++yi) {
      Vec y(rank_y * q, 0);
      y[yi] = 1;
      if (!(r_pairing(ctx_, lx, y) == r_pairing(ctx_, ell_dual_.apply(y), x)))
        throw PairingError("adjunction-failure", "x = " + std::to_string(xi) + ", y = " + std::to_string(yi));
    }
  }

  Module x_free = Module::free(ctx_, rank_x);
  Module y_free = Module::free(ctx_, rank_y);
  s_ = x_free.with_num(span_preimage(x_free.num(), ell_, y_free.den()));
  t_ = y_free.with_num(span_preimage(y_free.num(), ell_dual_, x_free.den()));

  // 0 -> S -> X -> Y* -> T* -> 0
  TwoTermComplex c = complex();
  if (!(c.h1() == s_)) throw PairingError("not-exact", "S -> X");
  if (s_.log_card() + static_cast<int>(rank_y * q) * z.n() != static_cast<int>(rank_x * q) * z.n() + t_dual().log_card())
    throw PairingError("not-exact", "Y* -> T*");

  // 0 -> T -> Y -> X* -> S* -> 0: restriction X* -> S* is onto with kernel l*(Y)
  Dual ds(s_);
  Mat images(z, rank_x * q, ds.module().ambient());
  for (std::size_t i = 0; i < rank_x; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      Vec f = ds.functional(coordinate_form(rank_x, q, i, j));
      std::copy(f.begin(), f.end(), images.row(i * q + j).begin());
    }
  }
  ModuleHom restriction(x_free, ds.module(), images);
  if (!restriction.is_surjective()) throw PairingError("not-exact", "X* -> S*");
  if (!(restriction.kernel() == x_free.with_num(ell_dual_))) throw PairingError("not-exact", "Y -> X*");
  if (t_.log_card() != t_dual().log_card()) throw PairingError("not-exact", "T -> Y");
}

Module PairingData::t_dual() const { return Module::free(ctx_, rank_y_).quotient(ell_); }

TwoTermComplex PairingData::complex() const {
  return TwoTermComplex(Module::free(ctx_, rank_x_), Module::free(ctx_, rank_y_), ell_);
}

PairingData PairingData::dual() const { return PairingData(ctx_, rank_y_, rank_x_, ell_dual_); }

Module PairingData::s_piece(std::size_t k) const {
  if (k < 1 || k + 1 > ctx_.p()) throw PairingError("unsupported-k", "k = " + std::to_string(k));
  return filtration_piece(ctx_, s_, k);
}

Module PairingData::t_piece(std::size_t k) const {
  if (k < 1 || k + 1 > ctx_.p()) throw PairingError("unsupported-k", "k = " + std::to_string(k));
  return filtration_piece(ctx_, t_, k);
}

Mat random_ell(SplitMix64& rng, const RingCtx& ctx, std::size_t rank_x, std::size_t rank_y) {
  const Zpn& z = ctx.scalars();
  std::vector<std::vector<GroupRingElt>> m(rank_x);
  for (auto& row : m) {
    for (std::size_t j = 0; j < rank_y; ++j) {
      Vec c(ctx.order());
      for (auto& x : c) x = rng.below(z.modulus());
      GroupRingElt e(ctx, std::move(c));
      std::uint64_t roll = rng.below(10);
      if (roll < 4) {
        // force a unit augmentation
        Residue aug = e.augmentation();
        Residue target = 1 + rng.below(z.p() - 1);
        e = e + GroupRingElt::constant(ctx, z.sub(target, aug % z.p()));
      } else if (roll < 8) {
        e = e * gamma_minus_one(ctx);
      } else {
        e = e * norm_element(ctx);
      }
      row.push_back(std::move(e));
    }
  }
  if (rank_x == 0 || rank_y == 0) return Mat(z, rank_x * ctx.order(), rank_y * ctx.order());
  return expand_matrix(ctx, m);
}

}  // namespace bockstein
