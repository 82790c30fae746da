#include <algorithm>

#include "bockstein/intmat.hpp"

namespace bockstein {

IntMat IntMat::from_rows(const std::vector<std::vector<BigInt>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("IntMat: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntMat IntMat::operator*(const IntMat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("IntMat: dimension mismatch");
  IntMat out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      for (std::size_t j = 0; j < o.cols_; ++j) out.at(i, j) += at(i, k) * o.at(k, j);
  return out;
}

Mat IntMat::reduce(const Zpn& ring) const {
  Mat m(ring, rows_, cols_);
  BigInt mod = ring.modulus();
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      BigInt r = at(i, j) % mod;
      if (r < 0) r += mod;
      m.at(i, j) = static_cast<Residue>(r);
    }
  }
  return m;
}

SmithResult smith_form_int(const IntMat& input) {
  IntMat a = input;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t t = 0;
  SmithResult res;
  while (t < rows && t < cols) {
    // smallest nonzero entry in the trailing block
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (a.at(i, j) == 0) continue;
        if (pi == rows || abs(a.at(i, j)) < abs(a.at(pi, pj))) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == rows) break;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(t, j), a.at(pi, j));
    for (std::size_t i = 0; i < rows; ++i) std::swap(a.at(i, t), a.at(i, pj));

    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      BigInt q = a.at(i, t) / a.at(t, t);
      if (q != 0)
        for (std::size_t j = t; j < cols; ++j) a.at(i, j) -= q * a.at(t, j);
      if (a.at(i, t) != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      BigInt q = a.at(t, j) / a.at(t, t);
      if (q != 0)
        for (std::size_t i = t; i < rows; ++i) a.at(i, j) -= q * a.at(i, t);
      if (a.at(t, j) != 0) clean = false;
    }
    if (!clean) continue;  // a smaller remainder now exists; pick it as the next pivot

    // divisibility: fold any row whose entries the pivot does not divide
    bool divides = true;
    for (std::size_t i = t + 1; i < rows && divides; ++i) {
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a.at(i, j) % a.at(t, t) != 0) {
          for (std::size_t jj = t; jj < cols; ++jj) a.at(t, jj) += a.at(i, jj);
          divides = false;
          break;
        }
      }
    }
    if (!divides) continue;

    res.divisors.push_back(abs(a.at(t, t)));
    ++t;
  }
  res.coker_free_rank = cols - res.divisors.size();
  return res;
}

}  // namespace bockstein
