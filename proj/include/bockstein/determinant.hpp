#pragma once

#include <cstddef>
#include <vector>

#include "bockstein/group_ring.hpp"

namespace bockstein {

/// Arithmetic policy for scalars of Z/p^n.
struct ScalarOps {
  Zpn ring;
  using value_type = Residue;
  Residue zero() const { return 0; }
  Residue one() const { return 1; }
  Residue add(Residue a, Residue b) const { return ring.add(a, b); }
  Residue sub(Residue a, Residue b) const { return ring.sub(a, b); }
  Residue mul(Residue a, Residue b) const { return ring.mul(a, b); }
};

/// Arithmetic policy for Z/p^n[G].
struct GroupRingOps {
  RingCtx ctx;
  using value_type = GroupRingElt;
  GroupRingElt zero() const { return GroupRingElt::zero(ctx); }
  GroupRingElt one() const { return GroupRingElt::one(ctx); }
  GroupRingElt add(const GroupRingElt& a, const GroupRingElt& b) const { return a + b; }
  GroupRingElt sub(const GroupRingElt& a, const GroupRingElt& b) const { return a - b; }
  GroupRingElt mul(const GroupRingElt& a, const GroupRingElt& b) const { return a * b; }
};

/// Division-free determinant by cofactor expansion along the first row.
template <class Ops>
typename Ops::value_type determinant(const Ops& ops, const std::vector<std::vector<typename Ops::value_type>>& m) {
  using T = typename Ops::value_type;
  const std::size_t n = m.size();
  if (n == 0) return ops.one();
  if (n == 1) return m[0][0];
  if (n == 2) return ops.sub(ops.mul(m[0][0], m[1][1]), ops.mul(m[0][1], m[1][0]));
  T acc = ops.zero();
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<T>> minor;
    minor.reserve(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<T> row;
      row.reserve(n - 1);
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[r][j]);
      minor.push_back(std::move(row));
    }
    T term = ops.mul(m[0][c], determinant(ops, minor));
    acc = c % 2 == 0 ? ops.add(acc, term) : ops.sub(acc, term);
  }
  return acc;
}

/// All k-element subsets of {0, ..., n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k);

/// Inverse of a square matrix over R via the adjugate; throws unless the determinant is a unit.
std::vector<std::vector<GroupRingElt>> inverse_matrix(const RingCtx& ctx,
                                                      const std::vector<std::vector<GroupRingElt>>& m);

}  // namespace bockstein
