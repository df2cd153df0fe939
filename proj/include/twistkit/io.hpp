#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "twistkit/analyzer.hpp"
#include "twistkit/closed_form.hpp"
#include "twistkit/division.hpp"

namespace twistkit {

using json = nlohmann::json;

/// Malformed file or descriptor (as opposed to a mathematical failure).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scalars: rationals as "p/q" strings (plain integers accepted on input),
// prime-field elements as integers, extension elements as coefficient arrays.
json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const FieldPtr& f, const json& j);
json vector_to_json(const Vector& v);
Vector vector_from_json(const FieldPtr& f, const json& j, std::optional<std::size_t> len = std::nullopt);
/// Row-major nested arrays.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const FieldPtr& f, const json& j, std::optional<std::size_t> n = std::nullopt);

/// {"kind":"rational"} | {"kind":"prime","p":p} | {"kind":"ext","p":p,"n":n,"modulus":[...]}
json field_to_json(const FieldPtr& f);
FieldPtr field_from_json(const json& j);

/// {"field", "dim", "table": table[i][j] = e_i e_j, "unit", "label"} plus the
/// optional members "norm" and "division_certificate".
json algebra_to_json(const Algebra& a);
Algebra algebra_from_json(const json& j);

/// {"map":"id"|"conj"|"frob"|"inner"|"reflection"|"matrix", "k", "q", "m"}
MapSpec map_spec_from_json(const Algebra& a, const json& j);
json map_spec_to_json(const MapSpec& s);
/// "1,-2,1/3" -> [1,-2,"1/3"]; text starting with '[' is parsed as JSON.
json vector_text_to_json(const std::string& text);
/// CLI shorthand: id, conj, frob:K, inner:q0,q1,..., reflection:q0,...
MapSpec map_spec_from_string(const Algebra& a, const std::string& s);

/// A built algebra together with the cyclic structure its builder knows about.
struct Built {
  Algebra algebra;
  std::optional<CyclicExtension> extension;
  std::optional<CyclicSubfield> subfield;
};

/// {"build":"cayley_dickson","base":spec,"c":s} | {"build":"extension","p","n","modulus"?}
/// | {"build":"cyclic","K":spec,"d":s} | {"build":"rational_cyclic","modulus":[..],"sigma":[[..]]}
/// | {"build":"scalar","field":f} | {"build":"quaternions"} | {"build":"octonions"}
/// | {"build":"fixture","name":n}
Built build_from_json(const json& j);

/// {"variant", "c", "f", "g", "h"|null, "pre_isotope":[f,g,h]|null, "kaplanski":{"a","b"}|null}
TwistSpec twist_spec_from_json(const Algebra& a, const json& j);

json twist_result_to_json(const TwistResult& r);
json scan_to_json(const std::vector<ScanRecord>& records);

/// {"algebra", "der_dim", "der_basis" (flattened row-major), "bracket"[a][b], "checks"}
json analysis_report(const std::string& label, const DerivationSpace& s, const std::vector<Check>& checks);

json subspace_to_json(const Subspace& s);

}  // namespace twistkit
