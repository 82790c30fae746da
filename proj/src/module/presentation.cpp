#include "bockstein/determinant.hpp"
#include "bockstein/module.hpp"

namespace bockstein {

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return out;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
}

std::vector<std::vector<GroupRingElt>> inverse_matrix(const RingCtx& ctx,
                                                      const std::vector<std::vector<GroupRingElt>>& m) {
  const std::size_t n = m.size();
  GroupRingOps ops{ctx};
  GroupRingElt det = determinant(ops, m);
  if (!det.is_unit()) throw std::invalid_argument("inverse_matrix: determinant is not a unit");
  GroupRingElt det_inv = det.inverse();
  std::vector<std::vector<GroupRingElt>> inv(n, std::vector<GroupRingElt>(n, GroupRingElt::zero(ctx)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // cofactor of entry (i, j) goes to position (j, i)
      std::vector<std::vector<GroupRingElt>> minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        std::vector<GroupRingElt> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != j) row.push_back(m[r][c]);
        minor.push_back(std::move(row));
      }
      GroupRingElt cof = determinant(ops, minor);
      if ((i + j) % 2 == 1) cof = -cof;
      inv[j][i] = cof * det_inv;
    }
  }
  return inv;
}

Mat minimal_generators(const Module& m) {
  const Zpn& z = m.scalars();
  Mat aug = m.num() * m.filtration_operator(Filtration::Augmentation);
  Mat acc = howell_form(vstack(vstack(aug, m.num().scaled(z.p() % z.modulus())), m.den()));
  Mat chosen(z, 0, m.ambient());
  for (std::size_t i = 0; i < m.num().rows(); ++i) {
    auto g = m.num().row(i);
    if (in_span(acc, g)) continue;
    chosen.append_row(g);
    acc = m.closure(vstack(acc, chosen.select_rows({chosen.rows() - 1})));
  }
  return chosen;
}

RPresentation::RPresentation(const RingCtx& ctx, const Module& m)
    : ctx_(ctx), module_(m), gens_(minimal_generators(m)) {
  const std::size_t q = ctx.order();
  const std::size_t count = gens_.rows();
  expansion_ = Mat(m.scalars(), count * q, m.ambient());
  for (std::size_t i = 0; i < count; ++i) {
    Vec cur = gens_.row_vec(i);
    for (std::size_t j = 0; j < q; ++j) {
      std::copy(cur.begin(), cur.end(), expansion_.row(i * q + j).begin());
      cur = m.gamma().apply(cur);
    }
  }
  solver_ = std::make_shared<const Solver>(vstack(expansion_, m.den()));
  relation_span_ = howell_form(solver_->kernel().select_cols(0, count * q));
  Module rel(gamma_action(ctx, count), relation_span_, Mat(m.scalars(), 0, count * q));
  Mat rel_gens = minimal_generators(rel);
  for (std::size_t i = 0; i < rel_gens.rows(); ++i) relations_.push_back(unflatten(ctx, rel_gens.row(i)));
}

std::optional<std::vector<GroupRingElt>> RPresentation::coefficients(std::span<const Residue> v) const {
  auto c = solver_->solve(v);
  if (!c) return std::nullopt;
  c->resize(gens_.rows() * ctx_.order());
  return unflatten(ctx_, *c);
}

Vec RPresentation::combine(const std::vector<GroupRingElt>& r) const {
  if (r.size() != gens_.rows()) throw std::invalid_argument("RPresentation: coefficient count mismatch");
  return expansion_.apply(flatten(r));
}

Ideal Ideal::generated(const RingCtx& ctx, const std::vector<GroupRingElt>& gens) {
  Mat rows(ctx.scalars(), 0, ctx.order());
  for (const auto& g : gens)
    if (!g.is_zero()) rows = vstack(rows, regular_rep(g));
  Ideal out;
  out.group_ring_ = true;
  out.basis_ = howell_form(rows);
  return out;
}

Ideal Ideal::generated(const Zpn& ring, const Vec& gens) {
  Mat col(ring, gens.size(), 1);
  for (std::size_t i = 0; i < gens.size(); ++i) col.at(i, 0) = ring.from_unsigned(gens[i]);
  Ideal out;
  out.group_ring_ = false;
  out.basis_ = howell_form(col);
  return out;
}

Ideal Ideal::operator+(const Ideal& o) const {
  if (group_ring_ != o.group_ring_) throw std::invalid_argument("Ideal: different ambient rings");
  Ideal out = *this;
  out.basis_ = span_sum(basis_, o.basis_);
  return out;
}

namespace {

template <class Ops>
std::vector<typename Ops::value_type> all_minors(const Ops& ops, std::size_t generators,
                                                 const std::vector<std::vector<typename Ops::value_type>>& rel,
                                                 std::size_t size) {
  std::vector<typename Ops::value_type> out;
  auto row_sets = subsets(rel.size(), size);
  auto col_sets = subsets(generators, size);
  for (const auto& rs : row_sets) {
    for (const auto& cs : col_sets) {
      std::vector<std::vector<typename Ops::value_type>> sub;
      sub.reserve(size);
      for (auto r : rs) {
        std::vector<typename Ops::value_type> row;
        row.reserve(size);
        for (auto c : cs) row.push_back(rel[r][c]);
        sub.push_back(std::move(row));
      }
      out.push_back(determinant(ops, sub));
    }
  }
  return out;
}

}  // namespace

Ideal fitting_ideal(const RingCtx& ctx, std::size_t generators,
                    const std::vector<std::vector<GroupRingElt>>& relations, std::size_t i) {
  if (i >= generators) return Ideal::whole(ctx);
  for (const auto& r : relations)
    if (r.size() != generators) throw std::invalid_argument("fitting_ideal: relation has the wrong length");
  return Ideal::generated(ctx, all_minors(GroupRingOps{ctx}, generators, relations, generators - i));
}

Ideal fitting_ideal(const RingCtx& ctx, const Module& m, std::size_t i) {
  RPresentation pres(ctx, m);
  return fitting_ideal(ctx, pres.size(), pres.relations(), i);
}

Ideal fitting_ideal_r0(const Zpn& ring, std::size_t generators, const Mat& relations, std::size_t i) {
  if (i >= generators) return Ideal::whole(ring);
  if (relations.cols() != generators) throw std::invalid_argument("fitting_ideal_r0: relation matrix has the wrong width");
  std::vector<Vec> rel;
  for (std::size_t r = 0; r < relations.rows(); ++r) rel.push_back(relations.row_vec(r));
  return Ideal::generated(ring, all_minors(ScalarOps{ring}, generators, rel, generators - i));
}

Ideal fitting_ideal_r0(const Module& m, std::size_t i) {
  Mat gens = minimal_generators(Module::trivial(m.num(), m.den()));
  Mat rel = howell_form(Solver(vstack(gens, m.den())).kernel().select_cols(0, gens.rows()));
  return fitting_ideal_r0(m.scalars(), gens.rows(), rel, i);
}

}  // namespace bockstein
