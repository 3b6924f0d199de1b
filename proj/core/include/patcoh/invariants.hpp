#pragma once

// Ranks of H^p(Z^d, C(X, Z)) from the orbit combinatorics of the singular
// arrangement, plus the Euler characteristic and the unordered K-group ranks.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "patcoh/model.hpp"
#include "patcoh/orbits.hpp"

namespace patcoh {

/// C(a, b), zero for b < 0 or b > a.
std::int64_t binomial(std::int64_t a, std::int64_t b);

/// nu = n / m. Throws ConsistencyError if m does not divide n or a class
/// violates rank(stabilizer) = nu * dim.
std::size_t compute_nu(const ProjectionData& data, const Arrangement& arrangement);

/// Signed count of singular chains; needs the relative data.
std::int64_t euler_characteristic(const Arrangement& arrangement);

struct WedgeQuantities {
  std::vector<std::int64_t> r;       // r_p (m = 2), indexed by p
  std::vector<std::int64_t> R;       // R_p (m = 3), indexed by p
  std::optional<std::int64_t> tilde_l1;  // m = 3 only
};

/// r_p or R_p for p = 0 .. d+1 (and the corrected line count for m = 3).
WedgeQuantities wedge_quantities(const Arrangement& arrangement);

/// Inputs of the closed rank formulas for codimension 1, 2 and 3.
struct FormulaInputs {
  std::size_t m = 0;
  std::size_t nu = 0;
  std::vector<std::size_t> L;  // L[l] = L_l, l = 0 .. m-1
  std::int64_t tilde_l1 = 0;   // m = 3
  std::int64_t e = 0;
  std::vector<std::int64_t> r;  // m = 2, indexed by p, needs p <= d+1
  std::vector<std::int64_t> R;  // m = 3, indexed by p, needs p <= d+1
};

/// D_0 .. D_d. Throws DomainError for m outside {1, 2, 3}.
std::vector<std::int64_t> rank_formulas(const FormulaInputs& in);

/// (rank K_0, rank K_1) of C(X) x Z^d from H^0 .. H^d.
std::pair<std::int64_t, std::int64_t> k_ranks(std::span<const std::int64_t> h, std::size_t d);

enum class ReportStatus { Finite, Infinite, UnsupportedCodimension };
std::string_view to_string(ReportStatus s);

struct InvariantReport {
  std::string name;
  FieldSpec field;
  std::size_t m = 0, n = 0, d = 0;
  std::optional<std::size_t> nu;
  ReportStatus status = ReportStatus::Finite;
  bool finite = true;

  std::vector<std::size_t> L;  // L[l] = L_l
  std::optional<std::int64_t> tilde_l1;
  std::optional<std::int64_t> e;
  std::vector<std::int64_t> r, R;  // indexed by p
  std::vector<std::int64_t> D;     // D_0 .. D_d
  std::vector<std::int64_t> H;     // rank H^0 .. H^d, H[q] = D[d - q]
  std::optional<std::pair<std::int64_t, std::int64_t>> K;

  std::optional<InfiniteL0> infinite;
  std::vector<std::string> diagnostics;
  std::optional<Arrangement> arrangement;
};

/// Thrown for codimension > 3 with a finite arrangement; the report still
/// carries the L-tables, nu and e.
class UnsupportedCodimension : public Error {
 public:
  explicit UnsupportedCodimension(InvariantReport report)
      : Error("no rank formulas for codimension " + std::to_string(report.m)), report_(std::move(report)) {}
  const InvariantReport& report() const { return report_; }

 private:
  InvariantReport report_;
};

/// Full pipeline. Requires validate(data).ok (throws DomainError otherwise).
/// An infinite L_0 yields a report with finite = false rather than an error.
InvariantReport cohomology_ranks(const ProjectionData& data, const EnumerateOptions& options = {});

/// The report for an arrangement with infinitely many point classes.
InvariantReport infinite_report(const ProjectionData& data, const InfiniteL0& witness);

/// Same, starting from an already enumerated arrangement with relative data.
InvariantReport invariants_of(const Arrangement& arrangement);

}  // namespace patcoh
