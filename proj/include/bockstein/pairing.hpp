#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "bockstein/filtered_complex.hpp"
#include "bockstein/module.hpp"
#include "bockstein/rng.hpp"

namespace bockstein {

/// Rejected pairing data or arguments. code() is one of "not-exact", "adjunction-failure",
/// "membership", "lift-not-found", "unsupported-k".
class PairingError : public std::runtime_error {
 public:
  PairingError(std::string code, std::string position)
      : std::runtime_error(code + " at " + position), code_(std::move(code)), position_(std::move(position)) {}
  const std::string& code() const { return code_; }
  const std::string& position() const { return position_; }

 private:
  std::string code_;
  std::string position_;
};

/// 0 -> S -> X --l--> Y* -> T* -> 0 with X = R^a and Y = R^b free. Y* is identified with R^b
/// through the dual basis, so l(x)(y) = sum_j l(x)_j y_j. The matrix ell is the expanded
/// (a p^n) x (b p^n) scalar matrix of l acting on row vectors.
class PairingData {
 public:
  /// Validates both exact sequences and the adjunction identity; throws PairingError.
  PairingData(RingCtx ctx, std::size_t rank_x, std::size_t rank_y, Mat ell);

  const RingCtx& ctx() const { return ctx_; }
  std::size_t rank_x() const { return rank_x_; }
  std::size_t rank_y() const { return rank_y_; }
  const Mat& ell() const { return ell_; }
  /// l*: Y -> X*, l*(y)(x) = l(x)(y).
  const Mat& ell_dual() const { return ell_dual_; }

  /// S = ker l inside X, T = ker l* inside Y.
  const Module& s() const { return s_; }
  const Module& t() const { return t_; }
  /// T* = coker l.
  Module t_dual() const;
  /// C = [X -> Y*].
  TwoTermComplex complex() const;
  /// The data of the dual sequence 0 -> T -> Y -> X* -> S* -> 0.
  PairingData dual() const;

  /// S_0^(k) = S_0 cap I^(k-1) S and T_0^(k); 1 <= k <= p-1.
  Module s_piece(std::size_t k) const;
  Module t_piece(std::size_t k) const;

 private:
  RingCtx ctx_;
  std::size_t rank_x_ = 0;
  std::size_t rank_y_ = 0;
  Mat ell_;
  Mat ell_dual_;
  Module s_;
  Module t_;
};

/// Random l with entries that are units, multiples of gamma - 1 or multiples of N (40/40/20).
Mat random_ell(SplitMix64& rng, const RingCtx& ctx, std::size_t rank_x, std::size_t rank_y);

struct PairingValue {
  std::size_t k = 0;
  GradedClass value;
  Residue scalar = 0;  // image under Q^k = R_0, (gamma - 1)^k |-> 1
  bool operator==(const PairingValue& o) const { return k == o.k && value == o.value; }
};

/// The derivative-operator pairing <s,t>_k = l(x_s)(y_t) mod I^(k+1), with D^(k-1) x_s = s~,
/// (gamma-1)^(k-1) s~ = s, and likewise for t. Lifts are cached per argument.
class BdPairing {
 public:
  /// With rng set, every lift adds a random element of the relevant kernel. The operators are
  /// built from the generator gamma^u.
  BdPairing(const PairingData& data, std::size_t k, SplitMix64* rng = nullptr, std::int64_t u = 1);

  std::size_t k() const { return k_; }
  /// x_s in X; throws PairingError("membership") unless s lies in S_0^(k).
  Vec lift_s(std::span<const Residue> s) const;
  Vec lift_t(std::span<const Residue> t) const;
  /// l(x)(y) reduced to Q^k.
  PairingValue value(std::span<const Residue> x, std::span<const Residue> y) const;
  PairingValue operator()(std::span<const Residue> s, std::span<const Residue> t) const {
    return value(lift_s(s), lift_t(t));
  }

 private:
  struct Side {
    Module piece;
    Mat module_rows;  // Howell generators of S (or T)
    std::shared_ptr<const Solver> tilde;  // coefficients c with c * rows * (gamma-1)^(k-1) = s
    std::shared_ptr<const Solver> deriv;  // x with x * D^(k-1) = s~
  };
  Vec lift(const Side& side, std::span<const Residue> v, const char* what) const;

  const PairingData* data_;
  std::size_t k_;
  SplitMix64* rng_;
  Side s_side_;
  Side t_side_;
};

/// The Bockstein pairing iota_k(beta^(k)(s))(t): s is pulled back through N: H^1(C/IC) = S_0 and
/// the projection from H^1(C/I^k C), pushed through psi^(k) into H^2(I^k C/I^(k+1) C), and evaluated
/// at t through H^2(I^k C/I^(k+1) C) = Hom(T_0, Q^k).
class BocPairing {
 public:
  BocPairing(const PairingData& data, std::size_t k);

  std::size_t k() const { return k_; }
  /// Canonical representative in I^k Y* of psi^(k) applied to the class attached to s.
  Vec bockstein_class(std::span<const Residue> s) const;
  /// y in Y with N y = t.
  Vec norm_lift(std::span<const Residue> t) const;
  PairingValue value(std::span<const Residue> w, std::span<const Residue> y) const;
  PairingValue operator()(std::span<const Residue> s, std::span<const Residue> t) const {
    return value(bockstein_class(s), norm_lift(t));
  }

 private:
  const PairingData* data_;
  std::size_t k_;
  TwoTermComplex complex_;
  Module s_piece_;
  Module t_piece_;
  ModuleHom psi_;
  std::shared_ptr<const Solver> norm_x_;
  std::shared_ptr<const Solver> norm_y_;
  std::shared_ptr<const Solver> relift_;  // rows: Z_k^{0,1} generators, then I X
  Mat ix_;
  std::size_t zk_rows_ = 0;
  Mat zk_;
};

PairingValue bd_pairing(const PairingData& data, std::size_t k, std::span<const Residue> s,
                        std::span<const Residue> t);
PairingValue boc_pairing(const PairingData& data, std::size_t k, std::span<const Residue> s,
                         std::span<const Residue> t);

struct PairingRecord {
  std::size_t k = 0;
  Vec s;
  Vec t;
  PairingValue bd;
  PairingValue boc;
  bool equal = false;
  bool symmetric = false;
  bool stable = false;  // same class under fresh lifts and gamma -> gamma^u
};

struct CompareOptions {
  std::uint64_t seed = 0;
  /// Above this bound on |S_0^(k)| |T_0^(k)| only generator pairs and random combinations are used.
  std::size_t max_card = 10000;
  std::size_t random_pairs = 16;
};

struct CompareReport {
  std::vector<PairingRecord> records;  // generator pairs
  std::size_t evaluations = 0;
  std::size_t equal = 0;
  std::size_t symmetric = 0;
  std::size_t stable = 0;
  bool bilinear = true;
  bool exhaustive = true;
  bool pass() const { return equal == evaluations && symmetric == evaluations && stable == evaluations && bilinear; }
};

/// Both pairings, symmetry and choice-independence for 1 <= k <= min(kmax, p-1).
CompareReport compare(const PairingData& data, std::size_t kmax, const CompareOptions& opts = {});

}  // namespace bockstein
