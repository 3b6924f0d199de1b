#pragma once

// Projection data (V, Gamma, W): the internal space V = R^m with coordinates
// in a real quadratic field, generators of the dense subgroup Gamma, and the
// finite family of affine hyperplanes whose Gamma-translates are singular.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "patcoh/error.hpp"
#include "patcoh/field.hpp"
#include "patcoh/linalg.hpp"

namespace patcoh {

/// {v in V : <normal, v> = offset}.
struct Hyperplane {
  FVector normal;
  FElem offset;

  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
};

/// Scales (normal, offset) so that the first nonzero normal coordinate is 1.
/// Throws DomainError for a zero normal.
Hyperplane canonical_hyperplane(const Hyperplane& h);

struct ProjectionData {
  std::string name;
  FieldSpec field;
  std::size_t dim = 0;  // m = dim V
  std::vector<FVector> generators;
  std::vector<Hyperplane> planes;

  /// n = rank Gamma.
  std::size_t rank() const { return generators.size(); }
  /// d = n - m, the dimension of the pattern.
  std::size_t pattern_dim() const { return rank() > dim ? rank() - dim : 0; }

  friend bool operator==(const ProjectionData&, const ProjectionData&) = default;
};

/// delta*m x n rational matrix whose columns are the restricted generators.
RatMatrix generator_matrix(const ProjectionData& data);

enum class ParseErrc {
  Syntax,           // not JSON
  Schema,           // missing keys, wrong types, unknown schema tag
  BadNumber,        // malformed rational text
  NonSquarefree,    // field radicand not squarefree (or < 2)
  IrrationalOverQ,  // nonzero sqrt part while the field is Q
  Shape,            // vector length differs from dim
  ZeroNormal,
};

std::string_view to_string(ParseErrc code);

class ParseError : public Error {
 public:
  ParseError(ParseErrc code, const std::string& what) : Error(what), code_(code) {}
  ParseErrc code() const { return code_; }

 private:
  ParseErrc code_;
};

/// Parses the "patcoh/1" JSON input format. Hyperplanes come back canonical;
/// no semantic validation is done here.
ProjectionData parse_projection_data(std::string_view text);
/// Inverse of parse_projection_data on canonical data.
std::string serialize(const ProjectionData& data);

enum class Severity { Error, Warning, Note };
std::string_view to_string(Severity s);

struct Finding {
  Severity severity;
  std::string code;
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Finding> findings;

  bool has(std::string_view code) const;
};

/// Maximum number of distinct normal directions accepted by validate.
inline constexpr std::size_t kMaxNormalDirections = 32;

ValidationReport validate(const ProjectionData& data);

}  // namespace patcoh
