#include "bockstein/json_io.hpp"

#include <fstream>
#include <iostream>
#include <limits>

namespace bockstein {

namespace {

const Json& field(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw InputError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(path + "." + key, "missing field");
  return *it;
}

std::int64_t int_at(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError(path, "expected an integer");
  return j.get<std::int64_t>();
}

std::size_t size_at(const Json& j, const std::string& path, std::size_t max = 1u << 16) {
  std::int64_t v = int_at(j, path);
  if (v < 0 || static_cast<std::uint64_t>(v) > max) throw InputError(path, "size out of range");
  return static_cast<std::size_t>(v);
}

const Json& array_at(const Json& j, const std::string& path, std::size_t len) {
  if (!j.is_array()) throw InputError(path, "expected an array");
  if (j.size() != len) throw InputError(path, "expected " + std::to_string(len) + " entries, found " + std::to_string(j.size()));
  return j;
}

std::string at_index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

// The ring of a nested object must agree with the enclosing one when present.
void check_ring(const Json& j, const RingCtx& ctx, const std::string& path) {
  if (j.is_object() && j.contains("ring") && !(ring_from_json(j["ring"], path + ".ring") == ctx))
    throw InputError(path + ".ring", "ring differs from the enclosing ring");
}

Json dims(std::size_t rows, std::size_t cols) { return {{"rows", rows}, {"cols", cols}}; }

}  // namespace

Json load_json(const std::string& file) {
  try {
    if (file == "-") return Json::parse(std::cin);
    std::ifstream in(file);
    if (!in) throw InputError("$", "cannot open " + file);
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("$", std::string("malformed JSON: ") + e.what());
  }
}

RingCtx ring_from_json(const Json& j, const std::string& path) {
  std::int64_t p = int_at(field(j, path, "p"), path + ".p");
  std::int64_t n = int_at(field(j, path, "n"), path + ".n");
  if (p < 3 || !is_prime(static_cast<std::uint64_t>(p))) throw InputError(path + ".p", "expected an odd prime");
  if (n < 1 || n > 6) throw InputError(path + ".n", "expected 1 <= n <= 6");
  try {
    return RingCtx(static_cast<std::uint64_t>(p), static_cast<int>(n));
  } catch (const std::exception& e) {
    throw InputError(path, e.what());
  }
}

Mat mat_from_json(const Json& j, const Zpn& ring, const std::string& path) {
  std::size_t rows = size_at(field(j, path, "rows"), path + ".rows");
  std::size_t cols = size_at(field(j, path, "cols"), path + ".cols");
  const Json& mod = field(j, path, "modulus");
  if (!mod.is_number_integer() || mod.get<std::int64_t>() <= 0 || static_cast<Residue>(mod.get<std::int64_t>()) != ring.modulus())
    throw InputError(path + ".modulus", "expected modulus " + std::to_string(ring.modulus()));
  const Json& e = array_at(field(j, path, "entries"), path + ".entries", rows * cols);
  Mat m(ring, rows, cols);
  for (std::size_t i = 0; i < rows * cols; ++i) m.at(i / cols, i % cols) = ring.reduce(int_at(e[i], at_index(path + ".entries", i)));
  return m;
}

IntMat int_mat_from_json(const Json& j, const std::string& path) {
  std::size_t rows = size_at(field(j, path, "rows"), path + ".rows");
  std::size_t cols = size_at(field(j, path, "cols"), path + ".cols");
  const Json& mod = field(j, path, "modulus");
  if (mod != "int") throw InputError(path + ".modulus", "expected \"int\"");
  const Json& e = array_at(field(j, path, "entries"), path + ".entries", rows * cols);
  IntMat m(rows, cols);
  for (std::size_t i = 0; i < rows * cols; ++i) {
    const std::string p = at_index(path + ".entries", i);
    if (e[i].is_string()) {
      const auto& s = e[i].get_ref<const std::string&>();
      std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
      if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
        throw InputError(p, "expected a decimal integer");
      m.at(i / cols, i % cols) = BigInt(s);
    } else {
      m.at(i / cols, i % cols) = int_at(e[i], p);
    }
  }
  return m;
}

GroupRingElt elt_from_json(const Json& j, const RingCtx& ctx, const std::string& path) {
  const Json& c = array_at(field(j, path, "coeffs"), path + ".coeffs", ctx.order());
  Vec v(ctx.order());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = ctx.scalars().reduce(int_at(c[i], at_index(path + ".coeffs", i)));
  return {ctx, v};
}

Module module_from_json(const Json& j, const RingCtx& ctx, const std::string& path) {
  check_ring(j, ctx, path);
  const Zpn& z = ctx.scalars();
  std::size_t g = size_at(field(j, path, "generators"), path + ".generators");
  Mat rel = mat_from_json(field(j, path, "relations"), z, path + ".relations");
  if (rel.cols() != g) throw InputError(path + ".relations.cols", "expected " + std::to_string(g));
  Mat gamma = mat_from_json(field(j, path, "gamma_action"), z, path + ".gamma_action");
  if (gamma.rows() != g || gamma.cols() != g) throw InputError(path + ".gamma_action", "expected a square matrix of size " + std::to_string(g));
  // gamma has order p^n, so it is invertible and an automorphism of the quotient
  Mat pw = Mat::identity(z, g);
  for (std::size_t i = 0; i < ctx.order(); ++i) pw = pw * gamma;
  if (!(pw == Mat::identity(z, g))) throw InputError(path + ".gamma_action", "gamma^(p^n) is not the identity");
  try {
    return Module(gamma, Mat::identity(z, g), rel);
  } catch (const std::exception&) {
    throw InputError(path + ".gamma_action", "does not preserve the relations");
  }
}

TwoTermComplex complex_from_json(const Json& j) {
  RingCtx ctx = ring_from_json(field(j, "$", "ring"), "$.ring");
  Module c1 = module_from_json(field(j, "$", "C1"), ctx, "$.C1");
  Module c2 = module_from_json(field(j, "$", "C2"), ctx, "$.C2");
  Mat d = mat_from_json(field(j, "$", "d"), ctx.scalars(), "$.d");
  if (d.rows() != c1.ambient() || d.cols() != c2.ambient()) throw InputError("$.d", "shape does not match C1 -> C2");
  try {
    return TwoTermComplex(c1, c2, d);
  } catch (const std::exception&) {
    throw InputError("$.d", "not a module homomorphism");
  }
}

PairingData pairing_from_json(const Json& j) {
  RingCtx ctx = ring_from_json(field(j, "$", "ring"), "$.ring");
  std::size_t a = size_at(field(j, "$", "rank_X"), "$.rank_X", 64);
  std::size_t b = size_at(field(j, "$", "rank_Y"), "$.rank_Y", 64);
  Mat ell = mat_from_json(field(j, "$", "ell"), ctx.scalars(), "$.ell");
  if (ell.rows() != a * ctx.order() || ell.cols() != b * ctx.order())
    throw InputError("$.ell", "expected a " + std::to_string(a * ctx.order()) + " x " + std::to_string(b * ctx.order()) + " matrix");
  return PairingData(ctx, a, b, ell);
}

StarkInstance stark_from_json(const Json& j) {
  RingCtx ctx = ring_from_json(field(j, "$", "ring"), "$.ring");
  std::size_t a = size_at(field(j, "$", "rank_X"), "$.rank_X", 8);
  std::size_t r = size_at(field(j, "$", "primes"), "$.primes", 8);
  Mat ell = mat_from_json(field(j, "$", "ell"), ctx.scalars(), "$.ell");
  if (ell.rows() != a * ctx.order() || ell.cols() != r * ctx.order())
    throw InputError("$.ell", "expected a " + std::to_string(a * ctx.order()) + " x " + std::to_string(r * ctx.order()) + " matrix");
  return build_instance(ctx, r, ell);
}

IntComplex int_complex_from_json(const Json& j) {
  std::int64_t p = int_at(field(j, "$", "p"), "$.p");
  if (p < 2 || p > 1000 || !is_prime(static_cast<std::uint64_t>(p))) throw InputError("$.p", "expected a prime below 1000");
  return {static_cast<std::uint64_t>(p), int_mat_from_json(field(j, "$", "d"), "$.d")};
}

Json to_json(const RingCtx& ctx) { return {{"p", ctx.p()}, {"n", ctx.n()}}; }

Json to_json(const Mat& m) {
  Json j = dims(m.rows(), m.cols());
  j["modulus"] = m.ring().modulus();
  Json e = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t c = 0; c < m.cols(); ++c) e.push_back(m.at(i, c));
  j["entries"] = std::move(e);
  return j;
}

Json to_json(const IntMat& m) {
  Json j = dims(m.rows(), m.cols());
  j["modulus"] = "int";
  Json e = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const BigInt& x = m.at(i, c);
      if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        e.push_back(static_cast<std::int64_t>(x));
      else
        e.push_back(x.str());
    }
  j["entries"] = std::move(e);
  return j;
}

Json to_json(const GroupRingElt& x) { return {{"coeffs", x.coeffs()}}; }

Json to_json(const Ideal& ideal) {
  Json gens = Json::array();
  for (std::size_t i = 0; i < ideal.basis().rows(); ++i) gens.push_back(ideal.basis().row_vec(i));
  return gens;
}

Json module_to_json(const RingCtx& ctx, const Module& m) {
  if (!(m.num() == howell_form(Mat::identity(m.scalars(), m.ambient()))))
    throw std::invalid_argument("module_to_json: only quotients of the ambient are supported");
  return {{"ring", to_json(ctx)}, {"generators", m.ambient()}, {"relations", to_json(m.den())}, {"gamma_action", to_json(m.gamma())}};
}

Json complex_to_json(const RingCtx& ctx, const TwoTermComplex& c) {
  return {{"ring", to_json(ctx)}, {"C1", module_to_json(ctx, c.c1())}, {"C2", module_to_json(ctx, c.c2())}, {"d", to_json(c.d())}};
}

Json pairing_to_json(const RingCtx& ctx, std::size_t rank_x, std::size_t rank_y, const Mat& ell) {
  return {{"ring", to_json(ctx)}, {"rank_X", rank_x}, {"rank_Y", rank_y}, {"ell", to_json(ell)}};
}

Json stark_to_json(const StarkInstance& inst) {
  return {{"ring", to_json(inst.ctx())}, {"rank_X", inst.rank_x()}, {"primes", inst.primes()}, {"ell", to_json(inst.ell())}};
}

Json int_complex_to_json(const IntComplex& c) { return {{"p", c.p}, {"d", to_json(c.d)}}; }

Json to_json(const PairingValue& v) {
  return {{"k", v.k}, {"class", v.value.representative.coeffs()}, {"scalar", v.scalar}};
}

Json to_json(const Structure& s) { return {{"free_rank", s.free_rank}, {"torsion", s.multiplicities}}; }

}  // namespace bockstein
