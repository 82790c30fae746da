#include "bockstein/linalg.hpp"

#include <limits>

namespace bockstein {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

Zpn::Zpn(std::uint64_t p, int n) : p_(p), n_(n) {
  if (!is_prime(p)) throw std::invalid_argument("Zpn: p must be prime, got " + std::to_string(p));
  if (n < 1) throw std::invalid_argument("Zpn: exponent must be positive");
  pow_p_.push_back(1);
  for (int i = 0; i < n; ++i) {
    if (pow_p_.back() > std::numeric_limits<std::uint64_t>::max() / (p * 2)) {
      throw std::invalid_argument("Zpn: modulus p^n does not fit in 63 bits");
    }
    pow_p_.push_back(pow_p_.back() * p);
  }
  modulus_ = pow_p_.back();
  small_ = modulus_ < (std::uint64_t{1} << 32);
}

Residue Zpn::reduce(std::int64_t x) const {
  auto m = static_cast<std::int64_t>(modulus_);
  std::int64_t r = x % m;
  if (r < 0) r += m;
  return static_cast<Residue>(r);
}

int Zpn::valuation(Residue a) const {
  if (a == 0) return n_;
  int v = 0;
  while (a % p_ == 0) {
    a /= p_;
    ++v;
  }
  return v;
}

Residue Zpn::unit_inverse(Residue u) const {
  if (!is_unit(u)) throw std::domain_error("Zpn: element is not a unit");
  // extended Euclid on signed 128-bit values
  __int128 t = 0, new_t = 1;
  __int128 r = modulus_, new_r = u % modulus_;
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += modulus_;
  return static_cast<Residue>(t);
}

}  // namespace bockstein
