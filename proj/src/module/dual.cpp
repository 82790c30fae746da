#include "bockstein/module.hpp"

namespace bockstein {

Dual::Dual(const Module& m) : source_(m), gens_(m.num()) {
  const Zpn& z = m.scalars();
  const std::size_t g = gens_.rows();
  coords_ = std::make_shared<const Solver>(gens_);

  // coefficient vectors c with c * gens in den; a functional is a vector killed by all of them
  Mat rel = Solver(vstack(gens_, m.den())).kernel().select_cols(0, g);
  Mat dual_num = kernel(rel.transpose());

  // g_i * gamma = sum_j a_ij g_j, so (gamma f)(g_i) = f(g_i gamma) is f * a^T
  Mat a(z, g, g);
  for (std::size_t i = 0; i < g; ++i) {
    Vec c = coordinates(m.gamma().apply(gens_.row(i)));
    std::copy(c.begin(), c.end(), a.row(i).begin());
  }
  module_ = Module(a.transpose(), dual_num, Mat(z, 0, g));
}

Vec Dual::coordinates(std::span<const Residue> m) const {
  auto c = coords_->solve(m);
  if (!c) throw std::invalid_argument("Dual: vector outside the module");
  return *c;
}

Residue Dual::eval0(std::span<const Residue> f, std::span<const Residue> m) const {
  const Zpn& z = source_.scalars();
  Vec c = coordinates(m);
  Residue s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) s = z.add(s, z.mul(c[i], f[i]));
  return s;
}

GroupRingElt Dual::eval(const RingCtx& ctx, std::span<const Residue> f, std::span<const Residue> m) const {
  // sum_j f_0(gamma^-j m) gamma^j, reindexed as sum_i f_0(gamma^i m) gamma^-i
  const std::size_t q = ctx.order();
  Vec out(q, 0);
  Vec cur(m.begin(), m.end());
  for (std::size_t i = 0; i < q; ++i) {
    out[(q - i) % q] = eval0(f, cur);
    cur = source_.gamma().apply(cur);
  }
  return {ctx, std::move(out)};
}

Vec Dual::functional(std::span<const Residue> col) const {
  const Zpn& z = source_.scalars();
  Vec out(gens_.rows(), 0);
  for (std::size_t i = 0; i < gens_.rows(); ++i) {
    auto row = gens_.row(i);
    Residue s = 0;
    for (std::size_t j = 0; j < row.size(); ++j) s = z.add(s, z.mul(row[j], col[j]));
    out[i] = s;
  }
  return out;
}

ModuleHom double_dual_map(const Module& m) {
  Dual d1(m);
  Dual d2(d1.module());
  const Mat& fs = d2.generators();
  Mat images(m.scalars(), m.num().rows(), fs.rows());
  for (std::size_t i = 0; i < m.num().rows(); ++i)
    for (std::size_t j = 0; j < fs.rows(); ++j) images.at(i, j) = d1.eval0(fs.row(j), m.num().row(i));
  return {m, d2.module(), std::move(images)};
}

}  // namespace bockstein
