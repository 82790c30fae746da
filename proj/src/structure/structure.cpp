#include "bockstein/structure.hpp"

#include <stdexcept>

#include "bockstein/filtered_complex.hpp"

namespace bockstein {

namespace {

int valuation(BigInt x, std::uint64_t p) {
  if (x < 0) x = -x;
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace

int valuation_bound(const IntComplex& c) {
  // Bareiss elimination; the last pivot is a nonzero minor of maximal size
  std::vector<std::vector<BigInt>> m(c.d.rows(), std::vector<BigInt>(c.d.cols()));
  for (std::size_t i = 0; i < c.d.rows(); ++i)
    for (std::size_t j = 0; j < c.d.cols(); ++j) m[i][j] = c.d.at(i, j);
  BigInt prev = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < c.d.cols() && row < m.size(); ++col) {
    std::size_t piv = row;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[row]);
    for (std::size_t i = row + 1; i < m.size(); ++i) {
      for (std::size_t j = col + 1; j < c.d.cols(); ++j) {
        BigInt t = m[row][col] * m[i][j] - m[i][col] * m[row][j];
        if (t % prev != 0) throw std::logic_error("valuation_bound: inexact Bareiss step");
        m[i][j] = t / prev;
      }
      m[i][col] = 0;
    }
    prev = m[row][col];
    ++row;
  }
  return row == 0 ? 0 : valuation(prev, c.p);
}

TauProfile tau_sequence(const IntComplex& c, std::size_t kmax) {
  Zpn z(c.p, static_cast<int>(kmax) + 2);
  const std::size_t a = c.d.rows(), b = c.d.cols();
  Module c1 = Module::trivial(Mat::identity(z, a), Mat(z, 0, a));
  Module c2 = Module::trivial(Mat::identity(z, b), Mat(z, 0, b));
  TwoTermComplex cx(c1, c2, c.d.reduce(z), Filtration::Uniformizer);
  TauProfile out;
  // each page is killed by p, so its log-cardinality is its F_p-dimension
  for (std::size_t k = 0; k <= kmax; ++k) {
    const int ki = static_cast<int>(k);
    out.taus.push_back(page_entry(cx, ki + 1, ki, 2 - ki).module.log_card());
  }
  out.k0 = 1;
  for (std::size_t k = out.taus.size(); k-- > 1;)
    if (out.taus[k] != out.taus[k - 1]) {
      out.k0 = k;
      break;
    }
  return out;
}

TauProfile tau_sequence(const IntComplex& c) { return tau_sequence(c, static_cast<std::size_t>(valuation_bound(c)) + 1); }

Structure recover_structure(const TauProfile& profile) {
  const auto& t = profile.taus;
  for (std::size_t k = 1; k < t.size(); ++k)
    if (t[k] > t[k - 1]) throw std::invalid_argument("recover_structure: non-monotone profile");
  if (t.size() < 2 || profile.k0 + 1 > t.size() || t.back() != t[t.size() - 2])
    throw std::invalid_argument("recover_structure: profile has not stabilized");
  Structure s;
  s.free_rank = static_cast<std::size_t>(t[profile.k0]);
  for (std::size_t i = 1; i <= profile.k0; ++i) s.multiplicities.push_back(static_cast<std::size_t>(t[i - 1] - t[i]));
  while (!s.multiplicities.empty() && s.multiplicities.back() == 0) s.multiplicities.pop_back();
  return s;
}

Structure snf_oracle(const IntComplex& c) {
  SmithResult r = smith_form_int(c.d);
  Structure s;
  s.free_rank = r.coker_free_rank;
  for (const auto& d : r.divisors) {
    int v = valuation(d, c.p);
    if (v == 0) continue;
    if (s.multiplicities.size() < static_cast<std::size_t>(v)) s.multiplicities.resize(static_cast<std::size_t>(v), 0);
    ++s.multiplicities[static_cast<std::size_t>(v) - 1];
  }
  return s;
}

}  // namespace bockstein
