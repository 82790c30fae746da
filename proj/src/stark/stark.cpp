#include "bockstein/stark.hpp"

#include "bockstein/determinant.hpp"

namespace bockstein {

namespace {

std::vector<std::size_t> members(Vertex v) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; v >> i; ++i)
    if ((v >> i) & 1U) out.push_back(i);
  return out;
}

bool is_subset(Vertex small, Vertex big) { return (small & ~big) == 0; }

std::vector<std::vector<GroupRingElt>> identity_basis(const RingCtx& ctx, std::size_t s) {
  std::vector<std::vector<GroupRingElt>> b(s, std::vector<GroupRingElt>(s, GroupRingElt::zero(ctx)));
  for (std::size_t i = 0; i < s; ++i) b[i][i] = GroupRingElt::one(ctx);
  return b;
}

// Restricted coordinate functional e_i* of X, in R-coordinates on the generators of the dual.
std::vector<GroupRingElt> coordinate(const ExteriorBidual& b, std::size_t i, std::size_t q) {
  Vec col(b.dual().source().ambient(), 0);
  col[i * q] = 1;
  auto u = b.wedge().presentation().coefficients(b.dual().functional(col));
  if (!u) throw std::logic_error("coordinate functional outside the dual");
  return *u;
}

Vec coordinate_wedge(const RingCtx& ctx, const ExteriorBidual& b, const std::vector<std::size_t>& t) {
  std::vector<std::vector<GroupRingElt>> vs;
  for (auto i : t) vs.push_back(coordinate(b, i, ctx.order()));
  return b.wedge().wedge(vs);
}

}  // namespace

StarkInstance build_instance(const RingCtx& ctx, std::size_t primes, const Mat& ell) {
  const std::size_t q = ctx.order();
  if (ell.cols() != primes * q || ell.rows() % q != 0)
    throw StarkError("not-a-core-vertex", "localization matrix has the wrong shape");
  if (primes > 16) throw StarkError("not-a-core-vertex", "too many primes");
  StarkInstance inst;
  inst.ctx_ = ctx;
  inst.rank_x_ = ell.rows() / q;
  inst.primes_ = primes;
  inst.ell_ = ell;
  if (inst.chi() < 0) throw StarkError("not-a-core-vertex", "negative core rank");
  if (inst.rank_x_ > 0 && primes > 0 && !collapse_matrix(ctx, ell))
    throw StarkError("not-a-core-vertex", "localization does not commute with gamma");

  Module x = inst.global();
  for (Vertex m = 0; m <= inst.full(); ++m) {
    Mat cols = inst.localization(inst.full() & ~m);
    inst.vertex_modules_.emplace(m, x.with_num(span_preimage(x.num(), cols, Mat(ctx.scalars(), 0, cols.cols()))));
  }
  // 0 -> H(empty) -> X -> sum L_q -> W* -> 0
  const int nq = static_cast<int>(q) * ctx.n();
  if (inst.vertex_module(0).log_card() + static_cast<int>(primes) * nq !=
      static_cast<int>(inst.rank_x_) * nq + inst.w_dual().log_card())
    throw StarkError("not-a-core-vertex", "Poitou-Tate sequence is not exact");
  if (!inst.is_core_vertex(inst.full())) throw StarkError("not-a-core-vertex", "full vertex");
  for (Vertex m = 0; m <= inst.full(); ++m)
    for (auto i : members(inst.full() & ~m))
      if (!span_contains(inst.vertex_module(m | (Vertex{1} << i)).num(), inst.vertex_module(m).num()))
        throw std::logic_error("vertex lattice is not monotone");
  return inst;
}

Mat StarkInstance::localization(Vertex primes) const {
  const std::size_t q = ctx_.order();
  auto idx = members(primes);
  Mat out(ctx_.scalars(), ell_.rows(), idx.size() * q);
  for (std::size_t b = 0; b < idx.size(); ++b)
    for (std::size_t r = 0; r < ell_.rows(); ++r)
      for (std::size_t j = 0; j < q; ++j) out.at(r, b * q + j) = ell_.at(r, idx[b] * q + j);
  return out;
}

Module StarkInstance::w_dual() const { return Module::free(ctx_, primes_).quotient(ell_); }

bool StarkInstance::is_core_vertex(Vertex m) const {
  const Module& h = vertex_module(m);
  std::size_t g = minimal_generators(h).rows();
  bool free = h.log_card() == static_cast<int>(g * ctx_.order()) * ctx_.n();
  const std::size_t q = ctx_.order();
  Mat local(ctx_.scalars(), 0, primes_ * q);
  for (auto i : members(m)) {
    Mat block(ctx_.scalars(), q, primes_ * q);
    for (std::size_t j = 0; j < q; ++j) block.at(j, i * q + j) = 1;
    local = vstack(local, block);
  }
  Mat sum = howell_form(vstack(local, ell_));
  return free && span_log_card(sum) == static_cast<int>(primes_ * q) * ctx_.n();
}

std::shared_ptr<const ExteriorBidual> StarkInstance::bidual(Vertex m) const {
  auto it = biduals_.find(m);
  if (it != biduals_.end()) return it->second;
  auto b = std::make_shared<const ExteriorBidual>(ctx_, vertex_module(m),
                                                  static_cast<std::size_t>(chi() + vertex_weight(m)));
  biduals_.emplace(m, b);
  return b;
}

StarkInstance extend_instance(const StarkInstance& inst, const std::vector<GroupRingElt>& c) {
  const RingCtx& ctx = inst.ctx();
  const std::size_t a = inst.rank_x(), r = inst.primes();
  if (c.size() != r) throw std::invalid_argument("extend_instance: one localization per old prime");
  std::vector<std::vector<GroupRingElt>> blocks(a + 1, std::vector<GroupRingElt>(r + 1, GroupRingElt::zero(ctx)));
  if (a > 0 && r > 0) {
    auto old = collapse_matrix(ctx, inst.ell());
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < r; ++j) blocks[i][j] = (*old)[i][j];
  }
  for (std::size_t j = 0; j < r; ++j) blocks[a][j] = c[j];
  blocks[a][r] = GroupRingElt::one(ctx);
  return build_instance(ctx, r + 1, expand_matrix(ctx, blocks));
}

Vec canonical_basis(const StarkInstance& inst) {
  const RingCtx& ctx = inst.ctx();
  auto b = inst.bidual(inst.full());
  std::vector<std::size_t> all(inst.rank_x());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  Vec f0 = coordinate_wedge(ctx, *b, all);
  const Mat& rows = b->module().num();
  Mat values(ctx.scalars(), rows.rows(), ctx.order());
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    auto v = b->evaluate(rows.row(i), f0).coeffs();
    std::copy(v.begin(), v.end(), values.row(i).begin());
  }
  Vec one(ctx.order(), 0);
  one[0] = 1;
  auto c = solve(values, one);
  if (!c) throw std::logic_error("canonical_basis: no element takes the value 1");
  return rows.apply(*c);
}

ModuleHom vertex_transition(const StarkInstance& inst, Vertex n, Vertex m) {
  if (!is_subset(m, n) || m == n) throw std::invalid_argument("vertex_transition: m must lie strictly inside n");
  const RingCtx& ctx = inst.ctx();
  Vertex qs = n & ~m;
  auto qlist = members(qs);
  const std::size_t s = qlist.size();
  const std::size_t rm = static_cast<std::size_t>(inst.chi() + vertex_weight(m));
  auto t = transition_map(ctx, inst.vertex_module(n), inst.vertex_module(m), inst.localization(qs), rm,
                          identity_basis(ctx, s));
  // phi_Q ^ F = (-1)^(s rm) F ^ phi_Q; then shuffle Q past the smaller primes of m
  std::size_t inversions = s * rm;
  for (auto a : qlist)
    for (auto b : members(m))
      if (a < b) ++inversions;
  if (inversions % 2 == 0) return t.map;
  const Zpn& z = ctx.scalars();
  return ModuleHom(t.map.source(), t.map.target(), t.map.images().scaled(z.neg(1)));
}

StarkSystem stark_from_basis(const StarkInstance& inst, const Vec& z) {
  auto b = inst.bidual(inst.full());
  Mat zrow = Mat::from_rows(inst.ctx().scalars(), z.size(), {z});
  if (!b->module().contains(z) || !(b->module().closure(zrow) == b->module().num()))
    throw StarkError("not-a-generator", "z does not generate the core bidual");
  StarkSystem sys;
  sys.instance = &inst;
  sys.entries[inst.full()] = {b, z};
  for (Vertex m = 0; m < inst.full(); ++m) sys.entries[m] = {inst.bidual(m), vertex_transition(inst, inst.full(), m).apply(z)};
  return sys;
}

Ideal image_ideal(const StarkInstance& inst, const StarkEntry& e) {
  std::vector<GroupRingElt> values;
  const Mat& gens = e.bidual->wedge().module().num();
  for (std::size_t i = 0; i < gens.rows(); ++i) values.push_back(e.bidual->evaluate(e.eps, gens.row(i)));
  return Ideal::generated(inst.ctx(), values);
}

Ideal ideal_I(const StarkSystem& eps, std::size_t i) {
  Ideal out = Ideal::generated(eps.instance->ctx(), {});
  for (const auto& [m, e] : eps.entries)
    if (static_cast<std::size_t>(vertex_weight(m)) == i) out = out + image_ideal(*eps.instance, e);
  return out;
}

std::map<std::vector<std::size_t>, GroupRingElt> value_table(const StarkInstance& inst, Vertex m, const StarkEntry& e,
                                                               std::size_t coords) {
  std::map<std::vector<std::size_t>, GroupRingElt> out;
  const std::size_t deg = static_cast<std::size_t>(inst.chi() + vertex_weight(m));
  if (deg > coords) return out;
  for (const auto& t : subsets(coords, deg)) out[t] = e.bidual->evaluate(e.eps, coordinate_wedge(inst.ctx(), *e.bidual, t));
  return out;
}

CompatibilityReport check_compatibility(const StarkSystem& eps) {
  CompatibilityReport rep;
  const StarkInstance& inst = *eps.instance;
  for (const auto& [n, en] : eps.entries)
    for (const auto& [m, em] : eps.entries) {
      if (m == n || !is_subset(m, n)) continue;
      ++rep.pairs;
      if (vertex_transition(inst, n, m).apply(en.eps) != em.bidual->module().canonical(em.eps)) ++rep.failures;
    }
  return rep;
}

std::vector<FittingRow> verify_fitting(const StarkInstance& inst, const StarkSystem& eps, std::size_t imax) {
  const RingCtx& ctx = inst.ctx();
  const std::size_t r = inst.primes();
  std::vector<std::vector<GroupRingElt>> rel;
  if (inst.rank_x() > 0 && r > 0) rel = *collapse_matrix(ctx, inst.ell());

  // fresh primes for weights beyond r, carrying the same determinant basis
  std::vector<StarkInstance> chain{inst};
  while (chain.back().primes() < imax)
    chain.push_back(extend_instance(chain.back(), std::vector<GroupRingElt>(chain.back().primes(), GroupRingElt::zero(ctx))));
  const StarkInstance& big = chain.back();
  std::optional<StarkSystem> extended;
  if (&big != &chain.front()) {
    auto b = inst.bidual(inst.full());
    std::vector<std::size_t> all(inst.rank_x());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    GroupRingElt u = b->evaluate(eps.entries.at(inst.full()).eps, coordinate_wedge(ctx, *b, all));
    Vec z = big.bidual(big.full())->module().act(u).apply(canonical_basis(big));
    extended = stark_from_basis(big, z);
  }

  std::vector<FittingRow> out;
  for (std::size_t i = 0; i <= imax; ++i) {
    FittingRow row;
    row.i = i;
    row.fitting = fitting_ideal(ctx, r, rel, i);
    row.stark = ideal_I(i <= r ? eps : *extended, i);
    row.equal = row.fitting == row.stark;
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

struct FamilySpace {
  std::vector<Vertex> vertices;
  std::vector<std::size_t> row_offset, col_offset;
  Mat nums;  // block diagonal of the bidual numerators
  Mat constraints;
};

FamilySpace family_space(const StarkInstance& inst) {
  const Zpn& z = inst.ctx().scalars();
  FamilySpace fs;
  std::size_t rows = 0, cols = 0;
  for (Vertex m = 0; m <= inst.full(); ++m) {
    fs.vertices.push_back(m);
    fs.row_offset.push_back(rows);
    fs.col_offset.push_back(cols);
    rows += inst.bidual(m)->module().num().rows();
    cols += inst.bidual(m)->module().ambient();
  }
  fs.nums = Mat(z, rows, cols);
  for (std::size_t v = 0; v < fs.vertices.size(); ++v) {
    const Mat& num = inst.bidual(fs.vertices[v])->module().num();
    for (std::size_t i = 0; i < num.rows(); ++i)
      for (std::size_t j = 0; j < num.cols(); ++j) fs.nums.at(fs.row_offset[v] + i, fs.col_offset[v] + j) = num.at(i, j);
  }
  // one block of columns per pair m < n: v_{n,m}(eps_n) - eps_m
  std::vector<Mat> blocks;
  for (std::size_t vn = 0; vn < fs.vertices.size(); ++vn)
    for (std::size_t vm = 0; vm < fs.vertices.size(); ++vm) {
      Vertex n = fs.vertices[vn], m = fs.vertices[vm];
      if (m == n || !is_subset(m, n)) continue;
      ModuleHom v = vertex_transition(inst, n, m);
      const Mat& num_m = inst.bidual(m)->module().num();
      Mat block(z, rows, num_m.cols());
      for (std::size_t i = 0; i < v.images().rows(); ++i)
        for (std::size_t j = 0; j < block.cols(); ++j) block.at(fs.row_offset[vn] + i, j) = v.images().at(i, j);
      for (std::size_t i = 0; i < num_m.rows(); ++i)
        for (std::size_t j = 0; j < block.cols(); ++j)
          block.at(fs.row_offset[vm] + i, j) = z.sub(block.at(fs.row_offset[vm] + i, j), num_m.at(i, j));
      blocks.push_back(std::move(block));
    }
  fs.constraints = Mat(z, rows, 0);
  for (const auto& b : blocks) fs.constraints = hstack(fs.constraints, b);
  return fs;
}

Mat compatible_families(const FamilySpace& fs) {
  if (fs.constraints.cols() == 0) return howell_form(fs.nums);
  return howell_form(kernel(fs.constraints) * fs.nums);
}

}  // namespace

int stark_module_log_card(const StarkInstance& inst) { return span_log_card(compatible_families(family_space(inst))); }

bool stark_map_bijective(const StarkInstance& inst) {
  FamilySpace fs = family_space(inst);
  Mat families = compatible_families(fs);
  auto core = inst.bidual(inst.full());
  const Mat& gens = core->module().num();
  Mat images(inst.ctx().scalars(), gens.rows(), fs.nums.cols());
  for (std::size_t g = 0; g < gens.rows(); ++g) {
    for (std::size_t v = 0; v < fs.vertices.size(); ++v) {
      Vertex m = fs.vertices[v];
      Vec e = m == inst.full() ? gens.row_vec(g) : vertex_transition(inst, inst.full(), m).apply(gens.row(g));
      std::copy(e.begin(), e.end(), images.row(g).begin() + static_cast<std::ptrdiff_t>(fs.col_offset[v]));
    }
  }
  Mat image = howell_form(images);
  return image == families && span_log_card(image) == core->module().log_card();
}

bool vertex_independent(const StarkInstance& inst, const std::vector<GroupRingElt>& c) {
  StarkInstance ext = extend_instance(inst, c);
  StarkSystem a = stark_from_basis(inst, canonical_basis(inst));
  StarkSystem b = stark_from_basis(ext, canonical_basis(ext));
  const std::size_t coords = inst.rank_x();
  for (Vertex m = 0; m <= inst.full(); ++m) {
    auto ta = value_table(inst, m, a.entries.at(m), coords);
    auto tb = value_table(ext, m, b.entries.at(m), coords + 1);
    for (const auto& [t, val] : tb) {
      // the new coordinate vanishes on H(m) for m inside P
      if (!t.empty() && t.back() == coords) {
        if (!val.is_zero()) return false;
      } else if (!(ta.at(t) == val)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace bockstein
