#include "bockstein/group_ring.hpp"

#include <string>

namespace bockstein {

RingCtx::RingCtx(std::uint64_t p, int n) : scalars_(p, n) {
  if (p == 2) throw std::invalid_argument("RingCtx: p must be odd");
  order_ = static_cast<std::size_t>(scalars_.modulus());
  if (order_ > 4096) throw std::invalid_argument("RingCtx: group order p^n too large");
}

GroupRingElt::GroupRingElt(RingCtx ctx, Vec coeffs) : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != ctx_.order()) {
    throw std::invalid_argument("GroupRingElt: expected " + std::to_string(ctx_.order()) + " coefficients");
  }
  for (auto& c : coeffs_) c = ctx_.scalars().from_unsigned(c);
}

GroupRingElt GroupRingElt::zero(const RingCtx& ctx) { return {ctx, Vec(ctx.order(), 0)}; }

GroupRingElt GroupRingElt::one(const RingCtx& ctx) { return constant(ctx, 1); }

GroupRingElt GroupRingElt::constant(const RingCtx& ctx, Residue c) {
  Vec v(ctx.order(), 0);
  v[0] = ctx.scalars().from_unsigned(c);
  return {ctx, std::move(v)};
}

GroupRingElt GroupRingElt::gamma_power(const RingCtx& ctx, std::int64_t e) {
  auto q = static_cast<std::int64_t>(ctx.order());
  std::int64_t r = ((e % q) + q) % q;
  Vec v(ctx.order(), 0);
  v[static_cast<std::size_t>(r)] = 1;
  return {ctx, std::move(v)};
}

GroupRingElt GroupRingElt::operator+(const GroupRingElt& o) const {
  return {ctx_, vec_add(ctx_.scalars(), coeffs_, o.coeffs_)};
}

GroupRingElt GroupRingElt::operator-(const GroupRingElt& o) const {
  return {ctx_, vec_sub(ctx_.scalars(), coeffs_, o.coeffs_)};
}

GroupRingElt GroupRingElt::operator-() const { return zero(ctx_) - *this; }

GroupRingElt GroupRingElt::operator*(const GroupRingElt& o) const {
  const Zpn& z = ctx_.scalars();
  const std::size_t q = ctx_.order();
  Vec out(q, 0);
  for (std::size_t i = 0; i < q; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < q; ++j) {
      if (o.coeffs_[j] == 0) continue;
      std::size_t k = i + j < q ? i + j : i + j - q;
      out[k] = z.add(out[k], z.mul(coeffs_[i], o.coeffs_[j]));
    }
  }
  return {ctx_, std::move(out)};
}

GroupRingElt GroupRingElt::scaled(Residue c) const { return {ctx_, vec_scale(ctx_.scalars(), c, coeffs_)}; }

GroupRingElt GroupRingElt::pow(std::size_t e) const {
  GroupRingElt result = one(ctx_);
  GroupRingElt base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Residue GroupRingElt::augmentation() const {
  Residue s = 0;
  for (auto c : coeffs_) s = ctx_.scalars().add(s, c);
  return s;
}

GroupRingElt GroupRingElt::inverse() const {
  if (!is_unit()) throw std::domain_error("GroupRingElt: not a unit");
  // x = a(1 - m) with a a scalar unit and m nilpotent; invert 1 - m by a finite geometric series
  Residue a_inv = ctx_.scalars().unit_inverse(augmentation());
  GroupRingElt m = one(ctx_) - scaled(a_inv);
  GroupRingElt sum = one(ctx_);
  GroupRingElt term = one(ctx_);
  for (;;) {
    term = term * m;
    if (term.is_zero()) break;
    sum = sum + term;
  }
  return sum.scaled(a_inv);
}

GroupRingElt GroupRingElt::substitute(std::int64_t u) const {
  const std::size_t q = ctx_.order();
  Vec out(q, 0);
  auto qq = static_cast<std::int64_t>(q);
  for (std::size_t i = 0; i < q; ++i) {
    if (coeffs_[i] == 0) continue;
    std::int64_t e = ((static_cast<std::int64_t>(i) * u) % qq + qq) % qq;
    auto k = static_cast<std::size_t>(e);
    out[k] = ctx_.scalars().add(out[k], coeffs_[i]);
  }
  return {ctx_, std::move(out)};
}

GroupRingElt gamma_minus_one(const RingCtx& ctx) {
  return GroupRingElt::gamma_power(ctx, 1) - GroupRingElt::one(ctx);
}

GroupRingElt norm_element(const RingCtx& ctx) { return {ctx, Vec(ctx.order(), 1)}; }

GroupRingElt derivative_op(const RingCtx& ctx, std::size_t k) {
  const std::size_t q = ctx.order();
  if (k >= q) throw std::out_of_range("derivative_op: degree must be below p^n");
  const Zpn& z = ctx.scalars();
  // Pascal triangle row by row, reduced mod p^n; C(i,k) is zero for i < k
  std::vector<Residue> row{1};
  Vec coeffs(q, 0);
  for (std::size_t i = 0; i < q; ++i) {
    if (i >= k) coeffs[i - k] = row[k];
    std::vector<Residue> next(std::min(i + 2, k + 1), 0);
    for (std::size_t j = 0; j < next.size(); ++j) {
      Residue left = j == 0 ? 0 : row[j - 1];
      Residue right = j < row.size() ? row[j] : 0;
      next[j] = z.add(left, right);
    }
    row = std::move(next);
  }
  GroupRingElt d(ctx, std::move(coeffs));
  return k % 2 == 0 ? d : -d;
}

GroupRingElt derivative_op(const RingCtx& ctx, std::size_t k, std::int64_t u) {
  return derivative_op(ctx, k).substitute(u);
}

Mat regular_rep(const GroupRingElt& x) {
  const RingCtx& ctx = x.ctx();
  const std::size_t q = ctx.order();
  Mat m(ctx.scalars(), q, q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) m.at(i, j) = x.coeff((j + q - i) % q);
  return m;
}

Mat aug_ideal_power(const RingCtx& ctx, std::size_t k) {
  return howell_form(regular_rep(gamma_minus_one(ctx).pow(k)));
}

GradedClass graded_class(const RingCtx& ctx, std::size_t k, const GroupRingElt& x) {
  if (!in_span(aug_ideal_power(ctx, k), x.coeffs())) {
    throw std::invalid_argument("graded_class: representative is not in I^" + std::to_string(k));
  }
  Vec rep = reduce_mod(aug_ideal_power(ctx, k + 1), x.coeffs());
  return {k, GroupRingElt(ctx, std::move(rep))};
}

Residue graded_scalar(const RingCtx& ctx, std::size_t k, const GroupRingElt& x) {
  if (k < 1 || k >= ctx.p()) throw std::invalid_argument("graded_scalar: graded piece not free for this degree");
  if (!in_span(aug_ideal_power(ctx, k), x.coeffs())) {
    throw std::invalid_argument("graded_scalar: representative is not in I^" + std::to_string(k));
  }
  Mat basis = Mat::from_rows(ctx.scalars(), ctx.order(), {gamma_minus_one(ctx).pow(k).coeffs()});
  Mat sys = vstack(basis, aug_ideal_power(ctx, k + 1));
  auto sol = solve(sys, x.coeffs());
  if (!sol) throw std::logic_error("graded_scalar: element of I^k not reached by (gamma-1)^k + I^(k+1)");
  return (*sol)[0];
}

Mat expand_matrix(const RingCtx& ctx, const std::vector<std::vector<GroupRingElt>>& m) {
  const std::size_t q = ctx.order();
  const std::size_t a = m.size();
  const std::size_t b = a == 0 ? 0 : m.front().size();
  Mat out(ctx.scalars(), a * q, b * q);
  for (std::size_t i = 0; i < a; ++i) {
    if (m[i].size() != b) throw std::invalid_argument("expand_matrix: ragged matrix");
    for (std::size_t j = 0; j < b; ++j) {
      Mat block = regular_rep(m[i][j]);
      for (std::size_t r = 0; r < q; ++r)
        for (std::size_t c = 0; c < q; ++c) out.at(i * q + r, j * q + c) = block.at(r, c);
    }
  }
  return out;
}

std::optional<std::vector<std::vector<GroupRingElt>>> collapse_matrix(const RingCtx& ctx, const Mat& m) {
  const std::size_t q = ctx.order();
  if (m.rows() % q != 0 || m.cols() % q != 0) return std::nullopt;
  const std::size_t a = m.rows() / q, b = m.cols() / q;
  std::vector<std::vector<GroupRingElt>> out(a);
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      Vec c(q);
      for (std::size_t t = 0; t < q; ++t) c[t] = m.at(i * q, j * q + t);
      for (std::size_t r = 0; r < q; ++r)
        for (std::size_t t = 0; t < q; ++t)
          if (m.at(i * q + r, j * q + t) != c[(t + q - r) % q]) return std::nullopt;
      out[i].emplace_back(ctx, std::move(c));
    }
  }
  return out;
}

Mat scalar_action(const GroupRingElt& x, std::size_t rank) {
  Mat block = regular_rep(x);
  Mat out(x.ctx().scalars(), rank * block.rows(), rank * block.cols());
  const std::size_t q = block.rows();
  for (std::size_t b = 0; b < rank; ++b)
    for (std::size_t r = 0; r < q; ++r)
      for (std::size_t c = 0; c < q; ++c) out.at(b * q + r, b * q + c) = block.at(r, c);
  return out;
}

Mat gamma_action(const RingCtx& ctx, std::size_t rank) {
  return scalar_action(GroupRingElt::gamma_power(ctx, 1), rank);
}

Vec flatten(const std::vector<GroupRingElt>& v) {
  Vec out;
  for (const auto& x : v) out.insert(out.end(), x.coeffs().begin(), x.coeffs().end());
  return out;
}

std::vector<GroupRingElt> unflatten(const RingCtx& ctx, std::span<const Residue> v) {
  const std::size_t q = ctx.order();
  if (v.size() % q != 0) throw std::invalid_argument("unflatten: length is not a multiple of p^n");
  std::vector<GroupRingElt> out;
  for (std::size_t i = 0; i < v.size(); i += q) out.emplace_back(ctx, Vec(v.begin() + i, v.begin() + i + q));
  return out;
}

}  // namespace bockstein
