#pragma once

#include <string>

#include <json.hpp>

#include "normopt/operators.hpp"

namespace normopt {

/// Wire schema: {"kind": ..., "params": {...}, "p": ..., "q": ...}
///   Diagonal     params: {rule: "novo1"|"explicit"|"reciprocal",
///                         entries?: [...]}
///   DenseMatrix  params: {rows: [[...], ...]}
///   Interleaved  params: {base: <spec>, k: int, partition: "dyadic"}
///   DisjointSum  params: {base: <spec>, terms: [{coeff, k}, ...]}
/// Nested base specs may omit p/q and inherit the enclosing values.
/// Malformed documents raise SpecParseError.
class SpecParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

OperatorSpec spec_from_json(const nlohmann::json& j);
nlohmann::ordered_json spec_to_json(const OperatorSpec& T);

OperatorSpec load_spec_file(const std::string& path);

/// FNV-1a digest of the canonical serialized spec, hex-encoded.
std::string spec_digest(const OperatorSpec& T);

}  // namespace normopt
