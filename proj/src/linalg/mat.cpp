#include "bockstein/linalg.hpp"

namespace bockstein {

Mat::Mat(Zpn ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Mat Mat::identity(const Zpn& ring, std::size_t n) {
  Mat m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::from_rows(const Zpn& ring, std::size_t cols, const std::vector<Vec>& rows) {
  Mat m(ring, 0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

Mat Mat::operator*(const Mat& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("Mat: dimension mismatch in product");
  Mat out(ring_, rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      Residue a = at(i, k);
      if (a == 0) continue;
      auto src = other.row(k);
      auto dst = out.row(i);
      for (std::size_t j = 0; j < other.cols_; ++j) {
        if (src[j] != 0) dst[j] = ring_.add(dst[j], ring_.mul(a, src[j]));
      }
    }
  }
  return out;
}

Mat Mat::operator+(const Mat& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("Mat: shape mismatch");
  Mat out(ring_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = ring_.add(data_[i], other.data_[i]);
  return out;
}

Mat Mat::operator-(const Mat& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("Mat: shape mismatch");
  Mat out(ring_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = ring_.sub(data_[i], other.data_[i]);
  return out;
}

Mat Mat::scaled(Residue c) const {
  Mat out = *this;
  for (auto& x : out.data_) x = ring_.mul(x, c);
  return out;
}

Mat Mat::transpose() const {
  Mat out(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

Mat Mat::power(std::size_t e) const {
  if (rows_ != cols_) throw std::invalid_argument("Mat: power of non-square matrix");
  Mat result = identity(ring_, rows_);
  Mat base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Vec Mat::apply(std::span<const Residue> v) const {
  if (v.size() != rows_) throw std::invalid_argument("Mat: vector length mismatch");
  Vec out(cols_, 0);
  for (std::size_t k = 0; k < rows_; ++k) {
    if (v[k] == 0) continue;
    auto src = row(k);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (src[j] != 0) out[j] = ring_.add(out[j], ring_.mul(v[k], src[j]));
    }
  }
  return out;
}

void Mat::append_row(std::span<const Residue> v) {
  if (v.size() != cols_) throw std::invalid_argument("Mat: appended row has wrong length");
  data_.insert(data_.end(), v.begin(), v.end());
  ++rows_;
}

Mat Mat::select_rows(const std::vector<std::size_t>& idx) const {
  Mat out(ring_, 0, cols_);
  for (auto i : idx) out.append_row(row(i));
  return out;
}

Mat Mat::select_cols(std::size_t first, std::size_t count) const {
  if (first + count > cols_) throw std::invalid_argument("Mat: column range out of bounds");
  Mat out(ring_, rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) out.at(i, j) = at(i, first + j);
  return out;
}

bool Mat::is_zero() const {
  for (auto x : data_)
    if (x != 0) return false;
  return true;
}

Mat vstack(const Mat& top, const Mat& bottom) {
  if (top.cols() != bottom.cols()) throw std::invalid_argument("vstack: column mismatch");
  Mat out = top;
  for (std::size_t i = 0; i < bottom.rows(); ++i) out.append_row(bottom.row(i));
  return out;
}

Mat hstack(const Mat& left, const Mat& right) {
  if (left.rows() != right.rows()) throw std::invalid_argument("hstack: row mismatch");
  Mat out(left.ring(), left.rows(), left.cols() + right.cols());
  for (std::size_t i = 0; i < left.rows(); ++i) {
    for (std::size_t j = 0; j < left.cols(); ++j) out.at(i, j) = left.at(i, j);
    for (std::size_t j = 0; j < right.cols(); ++j) out.at(i, left.cols() + j) = right.at(i, j);
  }
  return out;
}

Mat block_diag(const Mat& a, const Mat& b) {
  Mat out(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out.at(a.rows() + i, a.cols() + j) = b.at(i, j);
  return out;
}

Vec vec_add(const Zpn& r, std::span<const Residue> a, std::span<const Residue> b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = r.add(a[i], b[i]);
  return out;
}

Vec vec_sub(const Zpn& r, std::span<const Residue> a, std::span<const Residue> b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = r.sub(a[i], b[i]);
  return out;
}

Vec vec_scale(const Zpn& r, Residue c, std::span<const Residue> a) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = r.mul(c, a[i]);
  return out;
}

bool is_zero(std::span<const Residue> v) {
  for (auto x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace bockstein
