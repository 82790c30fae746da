#pragma once

#include <cstdint>
#include <vector>

#include "bockstein/intmat.hpp"

namespace bockstein {

/// [Z^a --d--> Z^b] localized at p; H^2 = Z_(p)^b / (rows of d).
struct IntComplex {
  std::uint64_t p = 0;
  IntMat d;
};

struct TauProfile {
  std::vector<int> taus;  // tau_0 .. tau_kmax
  std::size_t k0 = 1;
};

/// H^2 = free part + sum_i (Z/p^i)^(f_i); multiplicities[i-1] = f_i, trailing zeros trimmed.
struct Structure {
  std::size_t free_rank = 0;
  std::vector<std::size_t> multiplicities;
  bool operator==(const Structure& o) const = default;
};

/// p-adic valuation of a nonzero maximal minor of d: an upper bound for the valuation of every
/// elementary divisor. Found by fraction-free elimination, so no Smith form is involved.
int valuation_bound(const IntComplex& c);

/// tau_k = dim_F_p E_{k+1}^{k,2-k} for 0 <= k <= kmax, from the pages of the p-adic filtration.
/// The computation runs over Z/p^(kmax+2), which sees the same pages for k <= kmax.
TauProfile tau_sequence(const IntComplex& c, std::size_t kmax);
/// tau_sequence with kmax = valuation_bound + 1.
TauProfile tau_sequence(const IntComplex& c);

/// Free rank tau_k0 and f_i = tau_(i-1) - tau_i; throws std::invalid_argument on a non-monotone
/// or non-stabilized profile.
Structure recover_structure(const TauProfile& profile);

/// p-parts of the elementary divisors, bucketed by valuation, plus the cokernel free rank.
Structure snf_oracle(const IntComplex& c);

}  // namespace bockstein
