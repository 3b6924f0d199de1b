#pragma once

// Built-in projection data: the icosahedral tilings with published cohomology,
// the Fibonacci chain, and two fixtures (an infinite-L_0 case and a
// decomposable normal set).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "patcoh/model.hpp"

namespace patcoh::catalog {

/// Golden values; absent fields are not asserted.
struct ExpectedValues {
  std::optional<std::vector<std::int64_t>> H;  // H^0 .. H^d
  std::optional<std::size_t> L0, L1, L2;
  std::optional<std::int64_t> e, tilde_l1, R1, R2;
  bool infinite = false;
  std::optional<std::string> validation_error;  // finding code
};

struct CatalogEntry {
  std::string name;
  std::string description;
  ProjectionData data;
  std::optional<ExpectedValues> expected;
};

/// The golden ratio (1 + sqrt 5)/2 and its conjugate.
FElem tau();
FElem sigma();

/// w_1 .. w_6 in Q(sqrt 5)^3: the internal-space images of the standard basis of Z^6.
std::vector<FVector> icosahedral_star();

enum class AxisKind { TwoFold, ThreeFold, FiveFold };

/// Normals of the planes perpendicular to the given icosahedral axes, in
/// internal coordinates. Two-fold normals come redundantly (all w_i +- w_j).
std::vector<FVector> axis_normals(AxisKind kind);

std::vector<std::string> names();
bool contains(std::string_view name);
/// Throws DomainError for an unknown name.
CatalogEntry build(std::string_view name);

}  // namespace patcoh::catalog
