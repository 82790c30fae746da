#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bockstein {

using Residue = std::uint64_t;
using Vec = std::vector<Residue>;

/// The residue ring Z/p^n. Every stored value is a canonical residue in [0, p^n).
class Zpn {
 public:
  Zpn() = default;
  Zpn(std::uint64_t p, int n);

  std::uint64_t p() const { return p_; }
  int n() const { return n_; }
  Residue modulus() const { return modulus_; }

  Residue add(Residue a, Residue b) const {
    Residue s = a + b;
    return s >= modulus_ ? s - modulus_ : s;
  }
  Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + modulus_ - b; }
  Residue neg(Residue a) const { return a == 0 ? 0 : modulus_ - a; }
  Residue mul(Residue a, Residue b) const {
    if (small_) return (a * b) % modulus_;
    return static_cast<Residue>((static_cast<unsigned __int128>(a) * b) % modulus_);
  }
  Residue reduce(std::int64_t x) const;
  Residue from_unsigned(std::uint64_t x) const { return x % modulus_; }

  /// p-adic valuation of a residue, n for zero.
  int valuation(Residue a) const;
  /// p^v for 0 <= v <= n (p^n is returned as the modulus itself, never reduced).
  Residue pow_p(int v) const { return pow_p_[static_cast<std::size_t>(v)]; }
  bool is_unit(Residue a) const { return a % p_ != 0; }
  Residue unit_inverse(Residue u) const;

  bool operator==(const Zpn& o) const { return p_ == o.p_ && n_ == o.n_; }

 private:
  std::uint64_t p_ = 0;
  int n_ = 0;
  Residue modulus_ = 0;
  bool small_ = true;
  std::vector<Residue> pow_p_;
};

bool is_prime(std::uint64_t p);

/// Dense row-major matrix over Z/p^n. Maps act on row vectors: v |-> v * M.
class Mat {
 public:
  Mat() = default;
  Mat(Zpn ring, std::size_t rows, std::size_t cols);

  static Mat identity(const Zpn& ring, std::size_t n);
  static Mat from_rows(const Zpn& ring, std::size_t cols, const std::vector<Vec>& rows);

  const Zpn& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  Residue& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Residue at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const Residue> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<Residue> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  Vec row_vec(std::size_t i) const { return Vec(row(i).begin(), row(i).end()); }
  const std::vector<Residue>& data() const { return data_; }

  Mat operator*(const Mat& other) const;
  Mat operator+(const Mat& other) const;
  Mat operator-(const Mat& other) const;
  Mat scaled(Residue c) const;
  Mat transpose() const;
  Mat power(std::size_t e) const;
  /// Row vector times matrix.
  Vec apply(std::span<const Residue> v) const;

  void append_row(std::span<const Residue> v);
  Mat select_rows(const std::vector<std::size_t>& idx) const;
  Mat select_cols(std::size_t first, std::size_t count) const;

  bool is_zero() const;
  bool operator==(const Mat& o) const {
    return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  Zpn ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Residue> data_;
};

Mat vstack(const Mat& top, const Mat& bottom);
Mat hstack(const Mat& left, const Mat& right);
/// Block-diagonal sum.
Mat block_diag(const Mat& a, const Mat& b);

Vec vec_add(const Zpn& r, std::span<const Residue> a, std::span<const Residue> b);
Vec vec_sub(const Zpn& r, std::span<const Residue> a, std::span<const Residue> b);
Vec vec_scale(const Zpn& r, Residue c, std::span<const Residue> a);
bool is_zero(std::span<const Residue> v);

/// Howell normal form of the row span. Zero rows are dropped, pivots are normalized
/// to powers of p, and entries above each pivot are reduced below the pivot.
/// Row elimination runs in parallel above a work threshold.
Mat howell_form(const Mat& m);
/// Serial reference implementation; must agree with howell_form bit for bit.
Mat howell_form_serial(const Mat& m);

/// Column index of the first nonzero entry of each Howell row.
std::vector<std::size_t> pivot_columns(const Mat& howell);

/// log_p of the cardinality of the row span of a Howell form.
int span_log_card(const Mat& howell);

/// Every element of the row span of a Howell form, each exactly once (sum c_i h_i with
/// 0 <= c_i < additive order of the pivot). Empty if the span has more than `limit` elements.
std::vector<Vec> enumerate_span(const Mat& howell, std::size_t limit);

/// Canonical representative of v modulo the row span of a Howell form.
Vec reduce_mod(const Mat& howell, std::span<const Residue> v);
bool in_span(const Mat& howell, std::span<const Residue> v);

/// Rows spanning {v : v * M = 0}, in Howell form.
Mat kernel(const Mat& m);

/// Precomputed solver for v * M = b.
class Solver {
 public:
  explicit Solver(const Mat& m);
  std::optional<Vec> solve(std::span<const Residue> b) const;
  /// Howell form of {v : v * M = 0}.
  const Mat& kernel() const { return kernel_; }
  /// Howell form of the row span of M.
  const Mat& image() const { return image_; }

 private:
  Zpn ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Mat reducer_;  // rows [h | u] with h = u * M, h != 0
  Mat kernel_;
  Mat image_;
};

std::optional<Vec> solve(const Mat& m, std::span<const Residue> b);

// Submodule arithmetic on row spans inside a common ambient Z/p^n-module.
Mat span_sum(const Mat& a, const Mat& b);
Mat span_intersect(const Mat& a, const Mat& b);
Mat span_image(const Mat& a, const Mat& map);
/// {v in span(a) : v * map in span(b)}.
Mat span_preimage(const Mat& a, const Mat& map, const Mat& b);
bool span_contains(const Mat& big_howell, const Mat& small);

}  // namespace bockstein
