#pragma once

#include <string>
#include <vector>

#include "bockstein/group_ring.hpp"

namespace bockstein {

struct LemmaCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// For 1 <= k <= p-1 and free modules R^d, 1 <= d <= max_rank:
///   graded_piece:   |I^k / I^(k+1)| = p^n
///   der_relation:   (gamma - 1) D^(k) = D^(k-1)
///   der_image:      D^(k-1) R^d = ker (gamma - 1)^k
///   der_kernel:     (gamma - 1)^k R^d = ker D^(k-1)
/// by span algebra, or by listing every element when exhaustive is set (small rings only).
std::vector<LemmaCheck> ring_lemmas(const RingCtx& ctx, std::size_t max_rank, bool exhaustive);

}  // namespace bockstein
