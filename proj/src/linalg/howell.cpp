#include <algorithm>

#include "bockstein/linalg.hpp"

namespace bockstein {
namespace {

// Below this many residue updates per column the parallel kernel falls back to
// a plain loop; thread start-up dominates for the small blocks of a group ring.
constexpr std::size_t kParallelWork = std::size_t{1} << 14;

using Rows = std::vector<Vec>;

// Clear column `col` of every working row using the normalized pivot row.
// Working rows are zero left of `col`, and every entry in `col` is divisible
// by the pivot p^v because the pivot was chosen with minimal valuation.
void eliminate_serial(const Zpn& r, Rows& rows, const Vec& pivot, std::size_t col, Residue pv) {
  const std::size_t cols = pivot.size();
  for (auto& row : rows) {
    if (row[col] == 0) continue;
    Residue q = row[col] / pv;
    for (std::size_t j = col; j < cols; ++j) {
      if (pivot[j] != 0) row[j] = r.sub(row[j], r.mul(q, pivot[j]));
    }
  }
}

void eliminate_parallel(const Zpn& r, Rows& rows, const Vec& pivot, std::size_t col, Residue pv) {
  const std::size_t cols = pivot.size();
  const auto count = static_cast<std::ptrdiff_t>(rows.size());
  const bool wide = rows.size() * (cols - col) >= kParallelWork;
#pragma omp parallel for schedule(static) if (wide)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    auto& row = rows[static_cast<std::size_t>(i)];
    if (row[col] == 0) continue;
    Residue q = row[col] / pv;
    for (std::size_t j = col; j < cols; ++j) {
      if (pivot[j] != 0) row[j] = r.sub(row[j], r.mul(q, pivot[j]));
    }
  }
}

template <bool Parallel>
Mat howell_impl(const Mat& m) {
  const Zpn& r = m.ring();
  const std::size_t cols = m.cols();
  Rows work;
  work.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!is_zero(m.row(i))) work.push_back(m.row_vec(i));
  }

  Rows out;
  std::vector<std::size_t> piv_col;
  std::vector<int> piv_val;
  for (std::size_t col = 0; col < cols && !work.empty(); ++col) {
    // leftmost column, minimal valuation, lowest row index
    std::size_t best = work.size();
    int best_v = r.n();
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (work[i][col] == 0) continue;
      int v = r.valuation(work[i][col]);
      if (v < best_v) {
        best_v = v;
        best = i;
        if (v == 0) break;
      }
    }
    if (best == work.size()) continue;

    Vec pivot = std::move(work[best]);
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(best));
    const Residue pv = r.pow_p(best_v);
    const Residue unit = pivot[col] / pv;
    if (unit != 1) {
      Residue inv = r.unit_inverse(unit);
      for (std::size_t j = col; j < cols; ++j) pivot[j] = r.mul(pivot[j], inv);
    }

    if constexpr (Parallel) {
      eliminate_parallel(r, work, pivot, col, pv);
    } else {
      eliminate_serial(r, work, pivot, col, pv);
    }

    // The annihilator multiple keeps the row span saturated (Howell property).
    if (best_v > 0) {
      Vec extra = vec_scale(r, r.pow_p(r.n() - best_v), pivot);
      if (!is_zero(extra)) work.push_back(std::move(extra));
    }
    std::erase_if(work, [](const Vec& v) { return is_zero(v); });

    out.push_back(std::move(pivot));
    piv_col.push_back(col);
    piv_val.push_back(best_v);
  }

  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t c = piv_col[i];
    const Residue pv = r.pow_p(piv_val[i]);
    for (std::size_t k = 0; k < i; ++k) {
      Residue q = out[k][c] / pv;
      if (q == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        if (out[i][j] != 0) out[k][j] = r.sub(out[k][j], r.mul(q, out[i][j]));
      }
    }
  }
  return Mat::from_rows(r, cols, out);
}

}  // namespace

Mat howell_form(const Mat& m) { return howell_impl<true>(m); }
Mat howell_form_serial(const Mat& m) { return howell_impl<false>(m); }

std::vector<std::size_t> pivot_columns(const Mat& h) {
  std::vector<std::size_t> cols;
  cols.reserve(h.rows());
  for (std::size_t i = 0; i < h.rows(); ++i) {
    auto row = h.row(i);
    std::size_t j = 0;
    while (j < row.size() && row[j] == 0) ++j;
    cols.push_back(j);
  }
  return cols;
}

int span_log_card(const Mat& h) {
  const Zpn& r = h.ring();
  int total = 0;
  auto pc = pivot_columns(h);
  for (std::size_t i = 0; i < h.rows(); ++i) total += r.n() - r.valuation(h.at(i, pc[i]));
  return total;
}

std::vector<Vec> enumerate_span(const Mat& h, std::size_t limit) {
  const Zpn& r = h.ring();
  auto pc = pivot_columns(h);
  std::vector<Residue> order(h.rows());
  double total = 1;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    order[i] = r.pow_p(r.n() - r.valuation(h.at(i, pc[i])));
    total *= static_cast<double>(order[i]);
  }
  if (total > static_cast<double>(limit)) return {};
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(total));
  Vec c(h.rows(), 0);
  for (;;) {
    Vec v(h.cols(), 0);
    for (std::size_t i = 0; i < h.rows(); ++i)
      if (c[i] != 0) v = vec_add(r, v, vec_scale(r, c[i], h.row(i)));
    out.push_back(std::move(v));
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == order[i]) c[i++] = 0;
    if (i == c.size()) return out;
  }
}

Vec reduce_mod(const Mat& h, std::span<const Residue> v) {
  const Zpn& r = h.ring();
  Vec out(v.begin(), v.end());
  auto pc = pivot_columns(h);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    const std::size_t c = pc[i];
    const Residue pv = h.at(i, c);
    Residue q = out[c] / pv;
    if (q == 0) continue;
    auto row = h.row(i);
    for (std::size_t j = c; j < out.size(); ++j) {
      if (row[j] != 0) out[j] = r.sub(out[j], r.mul(q, row[j]));
    }
  }
  return out;
}

bool in_span(const Mat& h, std::span<const Residue> v) { return is_zero(reduce_mod(h, v)); }

Mat kernel(const Mat& m) { return Solver(m).kernel(); }

Solver::Solver(const Mat& m) : ring_(m.ring()), rows_(m.rows()), cols_(m.cols()) {
  Mat aug = hstack(m, Mat::identity(ring_, rows_));
  Mat h = howell_form(aug);
  reducer_ = Mat(ring_, 0, cols_ + rows_);
  kernel_ = Mat(ring_, 0, rows_);
  image_ = Mat(ring_, 0, cols_);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    auto row = h.row(i);
    bool left_zero = std::all_of(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(cols_),
                                 [](Residue x) { return x == 0; });
    if (left_zero) {
      kernel_.append_row(row.subspan(cols_));
    } else {
      reducer_.append_row(row);
      image_.append_row(row.subspan(0, cols_));
    }
  }
  // Rows of a Howell form with a given pivot region form a Howell form themselves.
  kernel_ = howell_form(kernel_);
}

std::optional<Vec> Solver::solve(std::span<const Residue> b) const {
  if (b.size() != cols_) throw std::invalid_argument("Solver: right-hand side has wrong length");
  Vec w(b.begin(), b.end());
  Vec coeff(rows_, 0);
  auto pc = pivot_columns(image_);
  for (std::size_t i = 0; i < reducer_.rows(); ++i) {
    const std::size_t c = pc[i];
    for (std::size_t j = 0; j < c; ++j) {
      if (w[j] != 0) return std::nullopt;
    }
    const Residue pv = reducer_.at(i, c);
    if (w[c] % pv != 0) return std::nullopt;
    Residue q = w[c] / pv;
    if (q == 0) continue;
    auto row = reducer_.row(i);
    for (std::size_t j = c; j < cols_; ++j) {
      if (row[j] != 0) w[j] = ring_.sub(w[j], ring_.mul(q, row[j]));
    }
    for (std::size_t j = 0; j < rows_; ++j) {
      Residue u = row[cols_ + j];
      if (u != 0) coeff[j] = ring_.add(coeff[j], ring_.mul(q, u));
    }
  }
  if (!is_zero(w)) return std::nullopt;
  return coeff;
}

std::optional<Vec> solve(const Mat& m, std::span<const Residue> b) { return Solver(m).solve(b); }

Mat span_sum(const Mat& a, const Mat& b) { return howell_form(vstack(a, b)); }

Mat span_intersect(const Mat& a, const Mat& b) {
  if (a.rows() == 0 || b.rows() == 0) return Mat(a.ring(), 0, a.cols());
  Solver s(vstack(a, b));
  const Mat& k = s.kernel();
  Mat coeff = k.select_cols(0, a.rows());
  return howell_form(coeff * a);
}

Mat span_image(const Mat& a, const Mat& map) { return howell_form(a * map); }

Mat span_preimage(const Mat& a, const Mat& map, const Mat& b) {
  if (a.rows() == 0) return Mat(a.ring(), 0, a.cols());
  Mat img = a * map;
  Solver s(vstack(img, b));
  Mat coeff = s.kernel().select_cols(0, a.rows());
  return howell_form(coeff * a);
}

bool span_contains(const Mat& big_howell, const Mat& small) {
  for (std::size_t i = 0; i < small.rows(); ++i) {
    if (!in_span(big_howell, small.row(i))) return false;
  }
  return true;
}

}  // namespace bockstein
