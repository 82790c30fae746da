#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "bockstein/module.hpp"
#include "bockstein/rng.hpp"

namespace bockstein {

class StarkError : public std::runtime_error {
 public:
  StarkError(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

/// Vertices are subsets of the prime labels q_1..q_r, encoded as bit masks.
using Vertex = std::uint32_t;

inline int vertex_weight(Vertex v) { return __builtin_popcount(v); }

/// Axiomatic core-vertex datum: X = R^a free, one free local module L_q = R per prime, and the
/// localization l = (lambda_q)_q: X -> R^r. The full vertex P is the core vertex.
class StarkInstance {
 public:
  StarkInstance() = default;

  const RingCtx& ctx() const { return ctx_; }
  std::size_t rank_x() const { return rank_x_; }
  std::size_t primes() const { return primes_; }
  /// Expanded (a p^n) x (r p^n) matrix of l.
  const Mat& ell() const { return ell_; }
  int chi() const { return static_cast<int>(rank_x_) - static_cast<int>(primes_); }
  Vertex full() const { return primes_ == 0 ? 0 : static_cast<Vertex>((std::uint64_t{1} << primes_) - 1); }

  Module global() const { return Module::free(ctx_, rank_x_); }
  /// H(m) = ker(X -> sum_{q not in m} L_q).
  const Module& vertex_module(Vertex m) const { return vertex_modules_.at(m); }
  /// Columns of l for the primes in the given set, in increasing order.
  Mat localization(Vertex primes) const;
  /// W* = coker l = R^r / l(X).
  Module w_dual() const;
  /// H(m) free and sum_{q in m} L_q -> W* onto.
  bool is_core_vertex(Vertex m) const;
  /// Exterior bidual of H(m) in degree chi + nu(m), built once per vertex.
  std::shared_ptr<const ExteriorBidual> bidual(Vertex m) const;

 private:
  friend StarkInstance build_instance(const RingCtx& ctx, std::size_t primes, const Mat& ell);
  RingCtx ctx_;
  std::size_t rank_x_ = 0;
  std::size_t primes_ = 0;
  Mat ell_;
  std::map<Vertex, Module> vertex_modules_;
  mutable std::map<Vertex, std::shared_ptr<const ExteriorBidual>> biduals_;
};

/// Throws StarkError("not-a-core-vertex") for negative core rank or a failed exactness check.
StarkInstance build_instance(const RingCtx& ctx, std::size_t primes, const Mat& ell);

/// Enlarge by a fresh prime q': X' = X + R g with lambda_q'(g) = 1, lambda_q'(X) = 0 and
/// lambda_q(g) = c_q for the old primes. The new prime takes the last label.
StarkInstance extend_instance(const StarkInstance& inst, const std::vector<GroupRingElt>& c);

/// Element of an exterior bidual together with the bidual it lives in.
struct StarkEntry {
  std::shared_ptr<const ExteriorBidual> bidual;
  Vec eps;
};

struct StarkSystem {
  const StarkInstance* instance = nullptr;
  std::map<Vertex, StarkEntry> entries;
};

/// The generator of the bidual at the core vertex taking the value 1 on e_1* ^ ... ^ e_a*.
Vec canonical_basis(const StarkInstance& inst);

/// v_{n,m} for m contained in n; the sign makes compositions agree and fixes the value on
/// e_1* ^ ... ^ e_a* under fresh-prime extension.
ModuleHom vertex_transition(const StarkInstance& inst, Vertex n, Vertex m);

/// epsilon_m = v_{P,m}(z); throws StarkError("not-a-generator") unless z generates.
StarkSystem stark_from_basis(const StarkInstance& inst, const Vec& z);

/// I_i = sum over vertices of weight i of the image ideals of epsilon.
Ideal ideal_I(const StarkSystem& eps, std::size_t i);
/// Image ideal of a single entry.
Ideal image_ideal(const StarkInstance& inst, const StarkEntry& e);

/// Values of an entry on wedges of restricted coordinate functionals e_T*, T a subset of the
/// first `coords` basis vectors of X with |T| = degree.
std::map<std::vector<std::size_t>, GroupRingElt> value_table(const StarkInstance& inst, Vertex m,
                                                               const StarkEntry& e, std::size_t coords);

struct CompatibilityReport {
  std::size_t pairs = 0;
  std::size_t failures = 0;
  bool ok() const { return failures == 0; }
};

/// v_{n,m}(epsilon_n) == epsilon_m for every m strictly inside n.
CompatibilityReport check_compatibility(const StarkSystem& eps);

struct FittingRow {
  std::size_t i = 0;
  Ideal fitting;
  Ideal stark;
  bool equal = false;
};

/// Fitt^i(W*) against I_i(eps) for 0 <= i <= imax, extending by fresh primes when i > r.
std::vector<FittingRow> verify_fitting(const StarkInstance& inst, const StarkSystem& eps, std::size_t imax);

/// log_p of the module of compatible families; free of rank one means p^n per group element.
int stark_module_log_card(const StarkInstance& inst);
/// Whether z |-> (v_{P,m}(z))_m maps the core bidual onto the compatible families.
bool stark_map_bijective(const StarkInstance& inst);

/// Families through P and through the extension by a fresh prime agree on every vertex of P.
bool vertex_independent(const StarkInstance& inst, const std::vector<GroupRingElt>& c);

}  // namespace bockstein
