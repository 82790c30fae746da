#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bockstein/linalg.hpp"

namespace bockstein {

/// R = Z/p^n [G] with G cyclic of order p^n and a fixed generator gamma.
class RingCtx {
 public:
  RingCtx() = default;
  RingCtx(std::uint64_t p, int n);

  const Zpn& scalars() const { return scalars_; }
  std::uint64_t p() const { return scalars_.p(); }
  int n() const { return scalars_.n(); }
  /// |G| = p^n, also the Z/p^n-rank of R.
  std::size_t order() const { return order_; }

  bool operator==(const RingCtx& o) const { return scalars_ == o.scalars_; }

 private:
  Zpn scalars_;
  std::size_t order_ = 0;
};

/// Element sum_i c_i gamma^i of R; coeffs has length p^n.
class GroupRingElt {
 public:
  GroupRingElt() = default;
  GroupRingElt(RingCtx ctx, Vec coeffs);
  static GroupRingElt zero(const RingCtx& ctx);
  static GroupRingElt one(const RingCtx& ctx);
  static GroupRingElt constant(const RingCtx& ctx, Residue c);
  /// gamma^e, exponent taken mod p^n (negative allowed).
  static GroupRingElt gamma_power(const RingCtx& ctx, std::int64_t e);

  const RingCtx& ctx() const { return ctx_; }
  const Vec& coeffs() const { return coeffs_; }
  Residue coeff(std::size_t i) const { return coeffs_[i]; }

  GroupRingElt operator+(const GroupRingElt& o) const;
  GroupRingElt operator-(const GroupRingElt& o) const;
  GroupRingElt operator-() const;
  GroupRingElt operator*(const GroupRingElt& o) const;
  GroupRingElt scaled(Residue c) const;
  GroupRingElt pow(std::size_t e) const;
  bool operator==(const GroupRingElt& o) const { return coeffs_ == o.coeffs_; }

  Residue augmentation() const;
  bool is_zero() const { return bockstein::is_zero(coeffs_); }
  /// R is local with residue field F_p, so units are exactly the elements of unit augmentation.
  bool is_unit() const { return ctx_.scalars().is_unit(augmentation()); }
  GroupRingElt inverse() const;
  /// Image under the automorphism gamma |-> gamma^u.
  GroupRingElt substitute(std::int64_t u) const;

 private:
  RingCtx ctx_;
  Vec coeffs_;
};

/// gamma - 1.
GroupRingElt gamma_minus_one(const RingCtx& ctx);
/// N = sum of all group elements.
GroupRingElt norm_element(const RingCtx& ctx);

/// D^(k) = (-1)^k sum_i C(i,k) gamma^(i-k), for 0 <= k < p^n. D^(0) is the norm.
GroupRingElt derivative_op(const RingCtx& ctx, std::size_t k);
/// The derivative operator built from the generator gamma^u instead of gamma.
GroupRingElt derivative_op(const RingCtx& ctx, std::size_t k, std::int64_t u);

/// p^n x p^n matrix of y |-> y * x on coefficient row vectors.
Mat regular_rep(const GroupRingElt& x);
/// Howell basis of I^k = (gamma - 1)^k R, as coefficient vectors.
Mat aug_ideal_power(const RingCtx& ctx, std::size_t k);

/// Class of an element of I^k modulo I^(k+1), held by its canonical representative.
struct GradedClass {
  std::size_t k = 0;
  GroupRingElt representative;
  bool operator==(const GradedClass& o) const { return k == o.k && representative == o.representative; }
};

/// Reduce x in I^k to its canonical class in Q^k; throws if x is not in I^k.
GradedClass graded_class(const RingCtx& ctx, std::size_t k, const GroupRingElt& x);

/// The isomorphism Q^k -> Z/p^n normalized by (gamma-1)^k |-> 1, valid for 1 <= k <= p-1.
Residue graded_scalar(const RingCtx& ctx, std::size_t k, const GroupRingElt& x);

/// Expand an a x b matrix over R into the (a p^n) x (b p^n) scalar matrix acting on row vectors.
Mat expand_matrix(const RingCtx& ctx, const std::vector<std::vector<GroupRingElt>>& m);
/// Inverse of expand_matrix; nullopt when some block is not a multiplication matrix.
std::optional<std::vector<std::vector<GroupRingElt>>> collapse_matrix(const RingCtx& ctx, const Mat& m);

/// Action of gamma on R^d in expanded coordinates (block diagonal cyclic shifts).
Mat gamma_action(const RingCtx& ctx, std::size_t rank);
/// Action of x on R^d in expanded coordinates.
Mat scalar_action(const GroupRingElt& x, std::size_t rank);

/// Expanded coordinates of a vector of ring elements, and back.
Vec flatten(const std::vector<GroupRingElt>& v);
std::vector<GroupRingElt> unflatten(const RingCtx& ctx, std::span<const Residue> v);

}  // namespace bockstein
