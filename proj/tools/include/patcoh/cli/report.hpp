#pragma once

// The "patcoh-report/1" JSON document and the human table rendering.

#include <optional>
#include <string>

#include "json.hpp"

#include "patcoh/invariants.hpp"
#include "patcoh/model.hpp"

namespace patcoh::cli {

inline constexpr const char* kReportSchema = "patcoh-report/1";

struct Timing {
  double validate_ms = 0, enumerate_ms = 0, invariants_ms = 0;
};

struct ReportInput {
  const ProjectionData* data = nullptr;
  const ValidationReport* validation = nullptr;
  const InvariantReport* invariants = nullptr;  // null after a validation failure
  bool dump_arrangement = false;
  std::optional<Timing> timing;
};

/// Keys in fixed order: schema_version, input, status, validation, results,
/// infinite, diagnostics, [arrangement], digest, [timing_ms].
nlohmann::ordered_json report_json(const ReportInput& in);

/// 64-bit FNV-1a over the compact dump, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

/// The report without timing and digest, compactly dumped; identical inputs
/// up to presentation give identical strings.
std::string canonical_report(const nlohmann::ordered_json& report);

/// One header row and one value row: H^0 .. H^d, L_l, e and the wedge terms.
std::string render_table(const InvariantReport& report);

/// Short human-readable summary.
std::string render_summary(const InvariantReport& report);

nlohmann::ordered_json felem_json(const FElem& x);

}  // namespace patcoh::cli
