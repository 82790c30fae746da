#include <algorithm>
#include <map>

#include "bockstein/determinant.hpp"
#include "bockstein/module.hpp"

namespace bockstein {

ExteriorPower::ExteriorPower(const RingCtx& ctx, const Module& m, std::size_t r)
    : pres_(ctx, m), r_(r), subsets_(bockstein::subsets(pres_.size(), r)) {
  const std::size_t q = ctx.order();
  const std::size_t gens = pres_.size();
  const std::size_t blocks = subsets_.size();
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t s = 0; s < blocks; ++s) index[subsets_[s]] = s;

  // k wedge e_T for every Z/p^n-generator k of the relation module and every (r-1)-subset T;
  // the Z/p^n-span of these is already gamma-stable
  Mat den(ctx.scalars(), 0, blocks * q);
  if (r > 0) {
    const Mat& rel = pres_.relation_span();
    auto smaller = bockstein::subsets(gens, r - 1);
    for (std::size_t row = 0; row < rel.rows(); ++row) {
      auto k = unflatten(ctx, rel.row(row));
      for (const auto& t : smaller) {
        std::vector<GroupRingElt> out(blocks, GroupRingElt::zero(ctx));
        for (std::size_t i = 0; i < gens; ++i) {
          if (k[i].is_zero() || std::find(t.begin(), t.end(), i) != t.end()) continue;
          std::vector<std::size_t> s = t;
          std::size_t before = 0;
          for (auto x : t) before += x < i ? 1 : 0;
          s.insert(s.begin() + static_cast<std::ptrdiff_t>(before), i);
          auto& slot = out[index.at(s)];
          slot = before % 2 == 0 ? slot + k[i] : slot - k[i];
        }
        den.append_row(flatten(out));
      }
    }
  }
  module_ = Module(gamma_action(ctx, blocks), Mat::identity(ctx.scalars(), blocks * q), den);
}

Vec ExteriorPower::wedge(const std::vector<std::vector<GroupRingElt>>& vectors) const {
  if (vectors.size() != r_) throw std::invalid_argument("ExteriorPower: expected r vectors");
  const RingCtx& ctx = pres_.ctx();
  GroupRingOps ops{ctx};
  std::vector<GroupRingElt> out;
  out.reserve(subsets_.size());
  for (const auto& s : subsets_) {
    std::vector<std::vector<GroupRingElt>> m(r_);
    for (std::size_t a = 0; a < r_; ++a)
      for (auto col : s) m[a].push_back(vectors[a].at(col));
    out.push_back(determinant(ops, m));
  }
  if (out.empty()) return {};
  return flatten(out);
}

ExteriorBidual::ExteriorBidual(const RingCtx& ctx, const Module& m, std::size_t r)
    : ctx_(ctx), dual_(m), wedge_(ctx, dual_.module(), r), bidual_(wedge_.module()) {}

TransitionMap transition_map(const RingCtx& ctx, const Module& y, const Module& x, const Mat& phi, std::size_t r,
                             const std::vector<std::vector<GroupRingElt>>& basis) {
  const std::size_t q = ctx.order();
  const std::size_t s = basis.size();
  if (x.ambient() != y.ambient() || !(x.den() == y.den()) || !span_contains(y.num(), x.num()))
    throw std::invalid_argument("transition_map: X is not a submodule of Y");
  if (phi.rows() != y.ambient() || phi.cols() != s * q)
    throw std::invalid_argument("transition_map: map to Z has the wrong shape");
  ModuleHom to_z = ModuleHom::from_ambient(y, Module::free(ctx, s), phi);
  if (!(to_z.kernel().num() == x.num())) throw std::invalid_argument("transition_map: sequence not exact at Y");

  auto src = std::make_shared<const ExteriorBidual>(ctx, y, r + s);
  auto tgt = std::make_shared<const ExteriorBidual>(ctx, x, r);
  const Dual& dy = src->dual();
  const Dual& dx = tgt->dual();
  const RPresentation& ypres = src->wedge().presentation();
  const RPresentation& xpres = tgt->wedge().presentation();

  // coordinates of phi in the basis z_1..z_s
  Mat phi_b = phi * expand_matrix(ctx, inverse_matrix(ctx, basis));
  std::vector<std::vector<GroupRingElt>> vectors;
  for (std::size_t j = 0; j < s; ++j) {
    Vec col(y.ambient());
    for (std::size_t i = 0; i < y.ambient(); ++i) col[i] = phi_b.at(i, j * q);
    auto u = ypres.coefficients(dy.functional(col));
    if (!u) throw std::logic_error("transition_map: coordinate functional not in Y*");
    vectors.push_back(std::move(*u));
  }

  // restriction Y* -> X*, and lifts of the generators of X* along it (R is self-injective)
  Mat res(y.scalars(), dy.generators().rows(), dx.generators().rows());
  for (std::size_t k = 0; k < dx.generators().rows(); ++k) {
    Vec c = dy.coordinates(dx.generators().row(k));
    for (std::size_t i = 0; i < c.size(); ++i) res.at(i, k) = c[i];
  }
  const Mat& ystar = dy.module().num();
  Solver lifter(ystar * res);
  std::vector<std::vector<GroupRingElt>> lifts;
  for (std::size_t t = 0; t < xpres.size(); ++t) {
    auto a = lifter.solve(xpres.generators().row(t));
    if (!a) throw std::logic_error("transition_map: restriction to X* is not surjective");
    auto u = ypres.coefficients(ystar.apply(*a));
    if (!u) throw std::logic_error("transition_map: lifted functional not in Y*");
    lifts.push_back(std::move(*u));
  }

  const Mat& sgamma = src->wedge().module().gamma();
  Mat t(y.scalars(), src->module().ambient(), tgt->module().ambient());
  const auto& tsubsets = tgt->wedge().subsets();
  for (std::size_t b = 0; b < tsubsets.size(); ++b) {
    std::vector<std::vector<GroupRingElt>> all = vectors;
    for (auto i : tsubsets[b]) all.push_back(lifts[i]);
    Vec cur = src->wedge().wedge(all);
    // the wedge modules are quotients of a free module, so their generators are the unit vectors
    // and bidual coordinate b*q + j is the value on gamma^j e_b, whose lift is gamma^j cur
    for (std::size_t j = 0; j < q; ++j) {
      Vec c = src->bidual().coordinates(cur);
      for (std::size_t i = 0; i < c.size(); ++i) t.at(i, b * q + j) = c[i];
      cur = sgamma.apply(cur);
    }
  }

  GroupRingOps ops{ctx};
  t = t * tgt->module().act(determinant(ops, basis));
  ModuleHom map = ModuleHom::from_ambient(src->module(), tgt->module(), t);
  return {src, tgt, std::move(map)};
}

}  // namespace bockstein
