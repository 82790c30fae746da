#include "bockstein/filtered_complex.hpp"

#include <algorithm>

namespace bockstein {

namespace {

Mat sum(const Mat& a, const Mat& b) { return vstack(a, b); }

}  // namespace

TwoTermComplex::TwoTermComplex(Module c1, Module c2, Mat d, Filtration f)
    : c1_(std::move(c1)), c2_(std::move(c2)), d_(std::move(d)), filtration_(f) {
  // validates shape, well-definedness and gamma-equivariance
  ModuleHom::from_ambient(c1_, c2_, d_);
}

Module TwoTermComplex::piece(int m, int a) const {
  if (m != 1 && m != 2) throw std::out_of_range("TwoTermComplex: degree outside [1, 2]");
  return filtration_submodule(term(m), filtration_, static_cast<std::size_t>(std::max(a, 0)));
}

Module TwoTermComplex::boundary(int a) const { return c2_.with_num(piece(1, a).num() * d_); }

Module page_cycles(const TwoTermComplex& c, int k, int i, int j) {
  const int m = i + j;
  if (m == 2) return c.piece(2, i);  // C^3 = 0
  if (m != 1) throw std::out_of_range("page_cycles: degree outside the two-term window");
  const Module& c1 = c.c1();
  return c1.with_num(span_preimage(c.piece(1, i).num(), c.d(), c.piece(2, i + k).num()));
}

Module page_boundaries(const TwoTermComplex& c, int k, int i, int j) {
  const int m = i + j;
  if (m == 1) return c.c1().with_num(c.c1().den());  // C^0 = 0
  if (m != 2) throw std::out_of_range("page_boundaries: degree outside the two-term window");
  return intersect(c.piece(2, i), c.boundary(i - k));
}

PageEntry page_entry(const TwoTermComplex& c, int k, int i, int j) {
  if (k < 1 || i < 0 || (i + j != 1 && i + j != 2)) throw std::out_of_range("page_entry: unsupported index window");
  const int m = i + j;
  Module z = page_cycles(c, k, i, j);
  Mat den = sum(page_cycles(c, k - 1, i + 1, j - 1).num(), page_boundaries(c, k - 1, i, j).num());
  return {k, i, j, Module(c.term(m).gamma(), z.num(), den)};
}

ModuleHom derived_bockstein(const TwoTermComplex& c, int k) {
  return ModuleHom::from_ambient(page_entry(c, k, 0, 1).module, page_entry(c, k, k, 2 - k).module, c.d());
}

Module h1_truncated(const TwoTermComplex& c, int k) {
  const Module& c1 = c.c1();
  Mat num = span_preimage(c1.num(), c.d(), c.piece(2, k).num());
  return Module(c1.gamma(), num, c.piece(1, k).num());
}

Module h2_graded(const TwoTermComplex& c, int k) {
  return Module(c.c2().gamma(), c.piece(2, k).num(), sum(c.piece(2, k + 1).num(), c.boundary(k).num()));
}

ModuleHom generalized_bockstein(const TwoTermComplex& c, int k) {
  // lift a class of C^1/F^k to C^1/F^(k+1), apply d, land in F^k C^2 / F^(k+1) C^2
  return ModuleHom::from_ambient(h1_truncated(c, k), h2_graded(c, k), c.d());
}

namespace {

// H^1(C/F^1 C) = {a : da in F^1 C^2} / F^1 C^1.
Module h1_mod_i(const TwoTermComplex& c) { return h1_truncated(c, 1); }

// A representative in Z_k^{0,1} of the class of a in C^1/F^1 C^1, found independently of a.
Vec relift(const Module& zk, const Mat& f1, std::span<const Residue> a) {
  Vec canon = reduce_mod(f1, a);
  Solver s(vstack(zk.num(), f1));
  auto coeff = s.solve(canon);
  if (!coeff) throw std::logic_error("relift: class has no representative in Z_k^{0,1}");
  coeff->resize(zk.num().rows());
  return zk.num().apply(*coeff);
}

}  // namespace

ModuleHom pi_projection(const TwoTermComplex& c, int k) {
  Module src = h1_truncated(c, k);
  Module e01 = page_entry(c, k, 0, 1).module;
  Module zk = page_cycles(c, k, 0, 1);
  Mat f1 = c.piece(1, 1).num();
  Mat images(src.scalars(), src.num().rows(), src.ambient());
  for (std::size_t r = 0; r < src.num().rows(); ++r) {
    Vec v = relift(zk, f1, src.num().row(r));
    std::copy(v.begin(), v.end(), images.row(r).begin());
  }
  return {src, e01, images};
}

ModuleHom rho_projection(const TwoTermComplex& c, int k) {
  Module e1 = page_entry(c, 1, k, 2 - k).module;
  Module ek = page_entry(c, k, k, 2 - k).module;
  return ModuleHom::from_ambient(e1, ek, Mat::identity(c.c2().scalars(), c.c2().ambient()));
}

RelateReport verify_relate(const TwoTermComplex& c, int k) {
  RelateReport rep;
  ModuleHom psi = generalized_bockstein(c, k);
  ModuleHom rho = rho_projection(c, k);
  ModuleHom pi = pi_projection(c, k);
  ModuleHom beta = derived_bockstein(c, k);
  // psi lands in H^2(F^k C/F^(k+1) C), which is E_1^{k,2-k} on the nose
  if (!(psi.target() == rho.source())) {
    rep.commutes = false;
    rep.detail = "H^2(F^k C/F^(k+1) C) differs from E_1^{k,2-k}";
    return rep;
  }
  const Module& h = psi.source();
  const Module& ek = beta.target();
  for (std::size_t r = 0; r < h.num().rows(); ++r) {
    auto a = h.num().row(r);
    Vec lhs = rho.apply(psi.lift(a));
    Vec rhs = beta.apply(pi.lift(a));
    ++rep.generators;
    if (lhs != rhs) {
      rep.commutes = false;
      rep.detail = "generator " + std::to_string(r) + " breaks the square";
      return rep;
    }
    if (!ek.is_zero_class(lhs)) ++rep.nonzero;
  }
  return rep;
}

Module graded_h2(const TwoTermComplex& c, int k) {
  Mat dc1 = c.boundary(0).num();
  return Module(c.c2().gamma(), sum(c.piece(2, k).num(), dc1), sum(c.piece(2, k + 1).num(), dc1));
}

CokerIsos coker_isos(const TwoTermComplex& c, int k) {
  CokerIsos out;
  Module target = graded_h2(c, k);
  const Mat id = Mat::identity(c.c2().scalars(), c.c2().ambient());

  // coker psi = ker(H^2(C/F^(k+1)) -> H^2(C/F^k)) = ker(H^2/F^(k+1) H^2 -> H^2/F^k H^2)
  ModuleHom psi = generalized_bockstein(c, k);
  out.psi_iso = ModuleHom::from_ambient(psi.cokernel(), target, id);
  out.psi_bijective = out.psi_iso.is_bijective();

  // coker beta = E_{k+1}^{k,2-k}, and F^k C^2/(F^k C^2 cap dC^1) = F^k H^2
  Module e_next = page_entry(c, k + 1, k, 2 - k).module;
  out.beta_iso = ModuleHom::from_ambient(e_next, target, id);
  out.beta_bijective = out.beta_iso.is_bijective();
  return out;
}

PageChecks verify_pages(const TwoTermComplex& c, int k) {
  PageChecks pc;
  const Mat id2 = Mat::identity(c.c2().scalars(), c.c2().ambient());
  const Mat id1 = Mat::identity(c.c1().scalars(), c.c1().ambient());

  Module e_next = page_entry(c, k + 1, k, 2 - k).module;
  Module fk = c.piece(2, k);
  Module closed(c.c2().gamma(), fk.num(),
                sum(c.piece(2, k + 1).num(), intersect(fk, c.boundary(0)).num()));
  pc.closed_form = e_next == closed;

  ModuleHom beta = derived_bockstein(c, k);
  pc.cokernel_page = ModuleHom::from_ambient(beta.cokernel(), e_next, id2).is_bijective();

  Module e01 = page_entry(c, k, 0, 1).module;
  Module e01_next = page_entry(c, k + 1, 0, 1).module;
  pc.kernel_page = e01_next.log_card() == beta.kernel().log_card();
  pc.monotone = e01_next.log_card() <= e01.log_card();

  ModuleHom pi = pi_projection(c, k);
  pc.pi_surjective = pi.is_surjective();

  // E_k^{0,1} -> H^1(C/F^1 C) is injective with the same image as H^1(C/F^k C)
  Module h1i = h1_mod_i(c);
  ModuleHom incl = ModuleHom::from_ambient(e01, h1i, id1);
  ModuleHom trunc = ModuleHom::from_ambient(h1_truncated(c, k), h1i, id1);
  pc.image_in_h1_mod_i = incl.is_injective() && incl.image() == trunc.image();

  // H^2(C/F^k C) as the cokernel of the truncated differential, against H^2 / F^k H^2
  Module c1k = c.c1().quotient(c.piece(1, k).num());
  Module c2k = c.c2().quotient(c.piece(2, k).num());
  Module h2k = ModuleHom::from_ambient(c1k, c2k, c.d()).cokernel();
  Module h2 = c.h2();
  Module h2_mod = h2.quotient(filtration_submodule(h2, c.filtration(), static_cast<std::size_t>(k)).num());
  pc.truncation = ModuleHom::from_ambient(h2k, h2_mod, id2).is_bijective();

  pc.e1_is_cohomology = page_entry(c, 1, k, 2 - k).module == h2_graded(c, k);
  return pc;
}

}  // namespace bockstein
