#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "bockstein/group_ring.hpp"

namespace bockstein {

/// Which operator generates the filtration: gamma - 1 (the augmentation ideal) or p.
enum class Filtration { Augmentation, Uniformizer };

/// A module presented as a subquotient num/den of an ambient (Z/p^n)^m, together with the
/// ambient matrix of gamma. R-modules are stored through the regular representation: R^d has
/// ambient d*p^n. Modules over R0 carry the identity as gamma.
class Module {
 public:
  Module() = default;
  /// den is folded into num; both are kept in Howell form. Throws unless gamma preserves both.
  Module(Mat gamma, const Mat& num, const Mat& den);

  static Module free(const RingCtx& ctx, std::size_t rank);
  static Module trivial(const Mat& num, const Mat& den);
  static Module zero(const Zpn& ring, std::size_t ambient);

  const Zpn& scalars() const { return gamma_.ring(); }
  std::size_t ambient() const { return gamma_.rows(); }
  const Mat& gamma() const { return gamma_; }
  const Mat& num() const { return num_; }
  const Mat& den() const { return den_; }

  /// log_p |M|.
  int log_card() const { return span_log_card(num_) - span_log_card(den_); }
  bool is_zero() const { return num_ == den_; }
  bool contains(std::span<const Residue> v) const { return in_span(num_, v); }
  bool is_zero_class(std::span<const Residue> v) const { return in_span(den_, v); }
  /// Canonical coset representative modulo den.
  Vec canonical(std::span<const Residue> v) const { return reduce_mod(den_, v); }

  /// Ambient matrix of x = sum x_i gamma^i.
  Mat act(const GroupRingElt& x) const;
  /// gamma - 1 or p on the ambient.
  Mat filtration_operator(Filtration f) const;

  /// Smallest gamma-stable span containing the rows of gens, in Howell form.
  Mat closure(const Mat& gens) const;
  /// Submodule generated by gens (over the group ring), same den.
  Module submodule(const Mat& gens) const;
  /// Same submodule lattice with num replaced; num must be gamma-stable and contain den.
  Module with_num(const Mat& num) const { return {gamma_, num, den_}; }
  /// M / <gens>.
  Module quotient(const Mat& gens) const;

  bool operator==(const Module& o) const {
    return gamma_ == o.gamma_ && num_ == o.num_ && den_ == o.den_;
  }

 private:
  Mat gamma_;
  Mat num_;
  Mat den_;
};

/// Same ambient and den required; returns the intersection of the numerators.
Module intersect(const Module& a, const Module& b);
/// F M for the filtration operator F.
Module filtration_submodule(const Module& m, Filtration f, std::size_t power);
/// {v in M : v * op = 0 in M}.
Module kernel_of(const Module& m, const Mat& op);
/// M_0 = M^G.
Module fixed_points(const Module& m);
/// M_0 cap I^(k-1) M, for 1 <= k <= p-1.
Module filtration_piece(const RingCtx& ctx, const Module& m, std::size_t k);

/// Homomorphism given by the images of the Howell generators of source().num().
class ModuleHom {
 public:
  ModuleHom() = default;
  /// Throws unless the map is well defined and commutes with gamma.
  ModuleHom(Module source, Module target, Mat images);
  /// Map induced by an ambient matrix.
  static ModuleHom from_ambient(Module source, Module target, const Mat& f);

  const Module& source() const { return source_; }
  const Module& target() const { return target_; }
  const Mat& images() const { return images_; }

  /// Canonical image of v in source().num().
  Vec apply(std::span<const Residue> v) const;
  /// Unreduced image of v.
  Vec lift(std::span<const Residue> v) const;

  Module kernel() const;
  Module image() const;
  Module cokernel() const { return target_.quotient(images_); }
  bool is_injective() const { return kernel().is_zero(); }
  bool is_surjective() const { return image().num() == target_.num(); }
  bool is_bijective() const { return is_injective() && is_surjective(); }

  /// next o this.
  ModuleHom then(const ModuleHom& next) const;
  bool operator==(const ModuleHom& o) const;

 private:
  Module source_;
  Module target_;
  Mat images_;
  std::shared_ptr<const Solver> coords_;
};

/// M* = Hom_R(M, R), realized as Hom_{Z/p^n}(M, Z/p^n). A functional is stored by its values
/// on the Howell generators of M, so the ambient of M* has one coordinate per generator.
class Dual {
 public:
  explicit Dual(const Module& m);

  const Module& source() const { return source_; }
  const Module& module() const { return module_; }
  const Mat& generators() const { return gens_; }

  /// Scalar value f_0(m).
  Residue eval0(std::span<const Residue> f, std::span<const Residue> m) const;
  /// R-valued pairing sum_j f_0(gamma^-j m) gamma^j.
  GroupRingElt eval(const RingCtx& ctx, std::span<const Residue> f, std::span<const Residue> m) const;
  /// Functional m |-> (m * col) restricted to M, for an ambient column (a Z/p^n-linear form).
  Vec functional(std::span<const Residue> col) const;
  /// Coordinates of m in terms of generators().
  Vec coordinates(std::span<const Residue> m) const;

 private:
  Module source_;
  Mat gens_;
  Module module_;
  Mat gamma_inv_;
  std::shared_ptr<const Solver> coords_;
};

/// Natural map M -> M**.
ModuleHom double_dual_map(const Module& m);

/// Minimal generating set over R (Nakayama): rows in the ambient of m.
Mat minimal_generators(const Module& m);

/// Presentation R^m -> M of an R-module, with the relation module as a span in R^m.
class RPresentation {
 public:
  RPresentation(const RingCtx& ctx, const Module& m);

  const RingCtx& ctx() const { return ctx_; }
  const Module& module() const { return module_; }
  std::size_t size() const { return gens_.rows(); }
  const Mat& generators() const { return gens_; }
  /// Howell form of the relation module inside R^m, expanded.
  const Mat& relation_span() const { return relation_span_; }
  /// A minimal set of R-relations, each a row of R^m.
  const std::vector<std::vector<GroupRingElt>>& relations() const { return relations_; }

  /// Some r in R^m with sum r_i g_i = v; nullopt if v is not in M.
  std::optional<std::vector<GroupRingElt>> coefficients(std::span<const Residue> v) const;
  /// sum r_i g_i.
  Vec combine(const std::vector<GroupRingElt>& r) const;

 private:
  RingCtx ctx_;
  Module module_;
  Mat gens_;
  Mat expansion_;  // row i*q + j is g_i * gamma^j
  Mat relation_span_;
  std::vector<std::vector<GroupRingElt>> relations_;
  std::shared_ptr<const Solver> solver_;
};

/// Ideal of R, or of R0 = Z/p^n, held as a Howell basis of coefficient vectors.
class Ideal {
 public:
  Ideal() = default;
  static Ideal generated(const RingCtx& ctx, const std::vector<GroupRingElt>& gens);
  static Ideal generated(const Zpn& ring, const Vec& gens);
  static Ideal whole(const RingCtx& ctx) { return generated(ctx, {GroupRingElt::one(ctx)}); }
  static Ideal whole(const Zpn& ring) { return generated(ring, Vec{1}); }

  bool over_group_ring() const { return group_ring_; }
  const Mat& basis() const { return basis_; }
  bool is_zero() const { return basis_.empty(); }
  bool contains(const Ideal& o) const { return span_contains(basis_, o.basis_); }
  bool contains(std::span<const Residue> x) const { return in_span(basis_, x); }
  Ideal operator+(const Ideal& o) const;
  bool operator==(const Ideal& o) const { return group_ring_ == o.group_ring_ && basis_ == o.basis_; }

 private:
  bool group_ring_ = true;
  Mat basis_;
};

/// Ideal of (g-i)-minors of a relation matrix with g columns (whole ring if i >= g).
Ideal fitting_ideal(const RingCtx& ctx, std::size_t generators,
                    const std::vector<std::vector<GroupRingElt>>& relations, std::size_t i);
Ideal fitting_ideal(const RingCtx& ctx, const Module& m, std::size_t i);
Ideal fitting_ideal_r0(const Zpn& ring, std::size_t generators, const Mat& relations, std::size_t i);
/// Fitting ideal of m as a Z/p^n-module (gamma ignored).
Ideal fitting_ideal_r0(const Module& m, std::size_t i);

/// Lambda^r M = Lambda^r R^m / (k wedge Lambda^(r-1) R^m), from an R-presentation of M.
class ExteriorPower {
 public:
  ExteriorPower(const RingCtx& ctx, const Module& m, std::size_t r);

  const RPresentation& presentation() const { return pres_; }
  std::size_t rank() const { return r_; }
  /// r-subsets of generator indices; subset s occupies ambient block s.
  const std::vector<std::vector<std::size_t>>& subsets() const { return subsets_; }
  const Module& module() const { return module_; }
  /// u_1 wedge ... wedge u_r for vectors given in R-coordinates on the generators.
  Vec wedge(const std::vector<std::vector<GroupRingElt>>& vectors) const;

 private:
  RPresentation pres_;
  std::size_t r_;
  std::vector<std::vector<std::size_t>> subsets_;
  Module module_;
};

/// The r-th exterior bidual (Lambda^r M*)*.
class ExteriorBidual {
 public:
  ExteriorBidual(const RingCtx& ctx, const Module& m, std::size_t r);

  const Dual& dual() const { return dual_; }
  const ExteriorPower& wedge() const { return wedge_; }
  const Dual& bidual() const { return bidual_; }
  const Module& module() const { return bidual_.module(); }
  /// eps(F) in R for F in Lambda^r M*.
  GroupRingElt evaluate(std::span<const Residue> eps, std::span<const Residue> f) const {
    return bidual_.eval(ctx_, eps, f);
  }

 private:
  RingCtx ctx_;
  Dual dual_;
  ExteriorPower wedge_;
  Dual bidual_;
};

/// Contraction map of bidual exterior powers along 0 -> X -> Y -> Z with Z = R^s free.
struct TransitionMap {
  std::shared_ptr<const ExteriorBidual> source;  // bidual of Y in degree r + s
  std::shared_ptr<const ExteriorBidual> target;  // bidual of X in degree r
  ModuleHom map;
};

/// X must be a submodule of Y (same ambient) equal to the kernel of phi: Y -> R^s; basis holds
/// the rows z_1..z_s of an R-basis of R^s. Throws std::invalid_argument on exactness failure.
TransitionMap transition_map(const RingCtx& ctx, const Module& y, const Module& x, const Mat& phi, std::size_t r,
                             const std::vector<std::vector<GroupRingElt>>& basis);

}  // namespace bockstein
