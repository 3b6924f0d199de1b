#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "patcoh/invariants.hpp"

namespace patcoh::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kValidation = 2,
  kInfinite = 3,
  kUnsupported = 4,
  kResource = 5,
};

struct ComputeOptions {
  std::size_t max_classes = kDefaultMaxClasses;
  bool dump_arrangement = false;
  bool timing = true;
};

struct ComputeResult {
  int exit_code = kOk;
  ValidationReport validation;
  std::optional<InvariantReport> report;  // empty after a validation failure
  nlohmann::ordered_json json;            // the patcoh-report/1 document
};

/// validate, enumerate and evaluate; ResourceError propagates.
ComputeResult compute_report(const ProjectionData& data, const ComputeOptions& options = {});

/// Runs the patcoh command line; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace patcoh::cli
