#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "json.hpp"

#include "dgt/coalgebra.hpp"
#include "dgt/dg_algebra.hpp"
#include "dgt/dg_lie.hpp"

namespace dgt::io {

using json = nlohmann::ordered_json;

inline constexpr int format_version = 1;

enum class Kind { dga, dgl, coalgebra, assoc, module };
const char* to_string(Kind k);

/// Malformed input: bad JSON, unknown keys, dangling names, inexact coefficients.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input whose structure fails its validator.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(Kind kind, Violation v);
  Kind kind;
  Violation violation;
};

struct Presentation {
  Kind kind = Kind::dga;
  std::variant<DGAlgebra, DGLieAlgebra, DGCoalgebra, DGModule> object;

  const DGAlgebra& algebra() const;
  const DGLieAlgebra& lie() const;
  const DGCoalgebra& coalgebra() const;
  const DGModule& module() const;
};

/// Builds and validates. Throws ParseError or ValidationError.
Presentation parse(const json& j);
/// Builds without validating. Throws ParseError.
Presentation parse_unchecked(const json& j);
Presentation load(const std::string& path);
json read_json(const std::string& path);

json to_json(const Presentation& p);
json to_json(const DGAlgebra& a, Kind kind = Kind::dga);
json to_json(const DGLieAlgebra& g);
json to_json(const DGCoalgebra& c);
json to_json(const DGModule& m);

/// Integers for prime fields, "p/q" strings for Q, polynomial strings for truncated rings.
json scalar_to_json(const Scalar& s);
/// Accepts integers and strings; floats are rejected.
Scalar scalar_from_json(RingPtr ring, const json& j);

/// [[name, coefficient], ...] in basis order.
json vec_to_json(const GradedModule& m, const Vec& v);
Vec vec_from_json(const GradedModule& m, const json& j);

json violation_to_json(const Violation& v);

}  // namespace dgt::io
