#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <vector>

#include "bockstein/linalg.hpp"

namespace bockstein {

using BigInt = boost::multiprecision::cpp_int;

/// Dense integer matrix, row-major, arbitrary precision.
class IntMat {
 public:
  IntMat() = default;
  IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntMat from_rows(const std::vector<std::vector<BigInt>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMat operator*(const IntMat& o) const;
  /// Reduction into Z/p^n.
  Mat reduce(const Zpn& ring) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

struct SmithResult {
  std::vector<BigInt> divisors;  // nonzero, positive, d1 | d2 | ...
  std::size_t coker_free_rank = 0;  // cols - number of divisors
};

/// Elementary divisors of the row-span map Z^rows -> Z^cols.
SmithResult smith_form_int(const IntMat& m);

}  // namespace bockstein
