#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "bockstein/filtered_complex.hpp"
#include "bockstein/pairing.hpp"
#include "bockstein/stark.hpp"
#include "bockstein/structure.hpp"

namespace bockstein {

using Json = nlohmann::json;

/// Malformed input. what() is "parse-error at <path>"; reason() says what was expected.
class InputError : public std::runtime_error {
 public:
  InputError(std::string path, std::string reason)
      : std::runtime_error("parse-error at " + path), path_(std::move(path)), reason_(std::move(reason)) {}
  const std::string& path() const { return path_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string path_;
  std::string reason_;
};

/// Reads and parses a JSON document; "-" is standard input.
Json load_json(const std::string& file);

// Readers. `path` is the JSON path of j, used in diagnostics.
RingCtx ring_from_json(const Json& j, const std::string& path = "$");
/// {"rows", "cols", "modulus", "entries"} with modulus p^n; entries are reduced into Z/p^n.
Mat mat_from_json(const Json& j, const Zpn& ring, const std::string& path = "$");
/// Same layout with "modulus": "int"; entries are integers or decimal strings.
IntMat int_mat_from_json(const Json& j, const std::string& path = "$");
GroupRingElt elt_from_json(const Json& j, const RingCtx& ctx, const std::string& path = "$");
/// {"ring", "generators", "relations", "gamma_action"}: (Z/p^n)^g modulo the relation rows.
Module module_from_json(const Json& j, const RingCtx& ctx, const std::string& path = "$");
TwoTermComplex complex_from_json(const Json& j);
/// Validation failures surface as PairingError.
PairingData pairing_from_json(const Json& j);
/// Validation failures surface as StarkError.
StarkInstance stark_from_json(const Json& j);
IntComplex int_complex_from_json(const Json& j);

// Writers, inverse to the readers.
Json to_json(const RingCtx& ctx);
Json to_json(const Mat& m);
Json to_json(const IntMat& m);
Json to_json(const GroupRingElt& x);
Json to_json(const Ideal& ideal);
/// Only modules of the form (Z/p^n)^g / relations, i.e. with full numerator.
Json module_to_json(const RingCtx& ctx, const Module& m);
Json complex_to_json(const RingCtx& ctx, const TwoTermComplex& c);
Json pairing_to_json(const RingCtx& ctx, std::size_t rank_x, std::size_t rank_y, const Mat& ell);
Json stark_to_json(const StarkInstance& inst);
Json int_complex_to_json(const IntComplex& c);
Json to_json(const PairingValue& v);
Json to_json(const Structure& s);

}  // namespace bockstein
