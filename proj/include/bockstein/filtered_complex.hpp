#pragma once

#include <string>

#include "bockstein/module.hpp"

namespace bockstein {

/// C = [C^1 -> C^2] with the filtration F^a C = I^a C, where I is generated by gamma - 1
/// (group rings) or by p (the discrete valuation case). C^0 = C^3 = 0 and F^a = C for a <= 0.
class TwoTermComplex {
 public:
  TwoTermComplex() = default;
  /// d is an ambient matrix C^1 -> C^2; throws unless it induces a homomorphism.
  TwoTermComplex(Module c1, Module c2, Mat d, Filtration f = Filtration::Augmentation);

  const Module& c1() const { return c1_; }
  const Module& c2() const { return c2_; }
  const Module& term(int m) const { return m == 1 ? c1_ : c2_; }
  const Mat& d() const { return d_; }
  Filtration filtration() const { return filtration_; }

  /// F^a C^m as a submodule of C^m, for m in {1, 2}.
  Module piece(int m, int a) const;
  /// d(F^a C^1) as a submodule of C^2.
  Module boundary(int a) const;

  Module h1() const { return c1_.with_num(span_preimage(c1_.num(), d_, c2_.den())); }
  Module h2() const { return c2_.quotient(c1_.num() * d_); }

 private:
  Module c1_;
  Module c2_;
  Mat d_;
  Filtration filtration_ = Filtration::Augmentation;
};

/// E_k^{i,j} = Z_k^{i,j} / (Z_{k-1}^{i+1,j-1} + B_{k-1}^{i,j}) as a subquotient of C^{i+j}.
struct PageEntry {
  int k = 0;
  int i = 0;
  int j = 0;
  Module module;
};

/// Z_k^{i,j} = ker(F^i C^m -> C^{m+1} / F^{i+k} C^{m+1}), m = i + j.
Module page_cycles(const TwoTermComplex& c, int k, int i, int j);
/// B_k^{i,j} = F^i C^m cap d(F^{i-k} C^{m-1}).
Module page_boundaries(const TwoTermComplex& c, int k, int i, int j);
/// Supported window: k >= 1, i >= 0, i + j in {1, 2}.
PageEntry page_entry(const TwoTermComplex& c, int k, int i, int j);

/// beta^(k) = d_k^{0,1}: E_k^{0,1} -> E_k^{k,2-k}.
ModuleHom derived_bockstein(const TwoTermComplex& c, int k);

/// H^1(C / F^k C) = {a in C^1 : da in F^k C^2} / F^k C^1.
Module h1_truncated(const TwoTermComplex& c, int k);
/// H^2(F^k C / F^(k+1) C).
Module h2_graded(const TwoTermComplex& c, int k);
/// psi^(k): connecting map of 0 -> F^k C/F^(k+1) C -> C/F^(k+1) C -> C/F^k C -> 0.
ModuleHom generalized_bockstein(const TwoTermComplex& c, int k);
/// pi: H^1(C/F^k C) -> E_k^{0,1}, through the image in H^1(C/F^1 C).
ModuleHom pi_projection(const TwoTermComplex& c, int k);
/// rho: E_1^{k,2-k} -> E_k^{k,2-k}.
ModuleHom rho_projection(const TwoTermComplex& c, int k);

struct RelateReport {
  bool commutes = true;
  std::size_t generators = 0;
  std::size_t nonzero = 0;  // generators on which both sides are nonzero
  std::string detail;
};

/// rho o psi^(k) == beta^(k) o pi on every generator of H^1(C/F^k C). The representative fed to
/// beta is re-lifted from the image in H^1(C/F^1 C), not the one fed to psi.
RelateReport verify_relate(const TwoTermComplex& c, int k);

/// F^k H^2 / F^(k+1) H^2 as a subquotient of C^2.
Module graded_h2(const TwoTermComplex& c, int k);

struct CokerIsos {
  ModuleHom psi_iso;   // coker psi^(k) -> F^k H^2 / F^(k+1) H^2
  ModuleHom beta_iso;  // coker beta^(k) = E_{k+1}^{k,2-k} -> F^k H^2 / F^(k+1) H^2
  bool psi_bijective = false;
  bool beta_bijective = false;
};

CokerIsos coker_isos(const TwoTermComplex& c, int k);

/// Further identities of the spectral sequence in the two-term window.
struct PageChecks {
  bool closed_form = false;          // E_{k+1}^{k,2-k} = F^k C^2 / (F^(k+1) C^2 + F^k C^2 cap dC^1)
  bool cokernel_page = false;        // E_{k+1}^{k,2-k} = E_k^{k,2-k} / im beta^(k)
  bool kernel_page = false;          // |E_{k+1}^{0,1}| = |ker beta^(k)|
  bool monotone = false;             // |E_{k+1}^{0,1}| <= |E_k^{0,1}|
  bool pi_surjective = false;
  bool image_in_h1_mod_i = false;    // E_k^{0,1} = image of H^1(C/F^k) in H^1(C/F^1)
  bool truncation = false;           // H^2(C/F^k C) = H^2(C) / F^k H^2(C)
  bool e1_is_cohomology = false;     // E_1^{k,2-k} = H^2(F^k C / F^(k+1) C)
  bool all() const {
    return closed_form && cokernel_page && kernel_page && monotone && pi_surjective && image_in_h1_mod_i &&
           truncation && e1_is_cohomology;
  }
};

PageChecks verify_pages(const TwoTermComplex& c, int k);

}  // namespace bockstein
