#include "patcoh/cli/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "patcoh/catalog.hpp"
#include "patcoh/cli/report.hpp"

namespace patcoh::cli {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ProjectionData load_source(const std::string& source) {
  if (catalog::contains(source)) return catalog::build(source).data;
  std::ifstream in(source, std::ios::binary);
  if (!in) throw UsageError("'" + source + "' is neither a catalog entry nor a readable file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_projection_data(buf.str());
}

std::size_t max_classes_from_env() {
  const char* v = std::getenv("PATCOH_MAX_CLASSES");
  if (v == nullptr || *v == '\0') return kDefaultMaxClasses;
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v, &end, 10);
  if (*end != '\0' || x == 0) throw UsageError("PATCOH_MAX_CLASSES must be a positive integer");
  return static_cast<std::size_t>(x);
}

void print_findings(const ValidationReport& v, std::ostream& os) {
  for (const auto& f : v.findings) os << to_string(f.severity) << " [" << f.code << "] " << f.message << '\n';
}

struct ComputeFlags {
  std::string source;
  bool table = false, json = false, dump = false, no_timing = false;
};

int cmd_compute(const ComputeFlags& flags, std::ostream& out, std::ostream& err) {
  const ProjectionData data = load_source(flags.source);
  ComputeOptions opts;
  opts.max_classes = max_classes_from_env();
  opts.dump_arrangement = flags.dump;
  opts.timing = !flags.no_timing;
  const ComputeResult res = compute_report(data, opts);

  if (flags.json) {
    out << res.json.dump(2) << '\n';
  } else if (!res.report) {
    out << data.name << ": validation failed\n";
    print_findings(res.validation, out);
  } else if (flags.table && res.report->status == ReportStatus::Finite) {
    out << render_table(*res.report);
  } else {
    out << render_summary(*res.report);
  }
  if (!res.report && flags.json) print_findings(res.validation, err);
  return res.exit_code;
}

int cmd_validate(const std::string& source, bool json, std::ostream& out) {
  const ProjectionData data = load_source(source);
  const ValidationReport v = validate(data);
  if (json) {
    nlohmann::ordered_json j;
    j["name"] = data.name;
    j["ok"] = v.ok;
    j["findings"] = nlohmann::ordered_json::array();
    for (const auto& f : v.findings)
      j["findings"].push_back({{"severity", to_string(f.severity)}, {"code", f.code}, {"message", f.message}});
    out << j.dump(2) << '\n';
  } else {
    out << data.name << ": " << (v.ok ? "ok" : "invalid") << '\n';
    print_findings(v, out);
  }
  return v.ok ? kOk : kValidation;
}

int cmd_list(bool json, std::ostream& out) {
  if (json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& name : catalog::names()) j.push_back({{"name", name}, {"description", catalog::build(name).description}});
    out << j.dump(2) << '\n';
    return kOk;
  }
  for (const auto& name : catalog::names()) {
    out << name;
    for (std::size_t i = name.size(); i < 20; ++i) out << ' ';
    out << catalog::build(name).description << '\n';
  }
  return kOk;
}

int cmd_export(const std::string& name, const std::string& path, std::ostream& out) {
  if (!catalog::contains(name)) throw UsageError("unknown catalog entry '" + name + "'");
  const std::string text = serialize(catalog::build(name).data);
  if (path.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream f(path, std::ios::binary);
  if (!(f << text)) throw UsageError("cannot write '" + path + "'");
  return kOk;
}

}  // namespace

ComputeResult compute_report(const ProjectionData& data, const ComputeOptions& options) {
  ComputeResult res;
  Timing timing;
  auto t0 = Clock::now();
  res.validation = validate(data);
  timing.validate_ms = ms_since(t0);

  if (res.validation.ok) {
    EnumerateOptions eopts;
    eopts.max_classes = options.max_classes;
    t0 = Clock::now();
    auto arr = enumerate_arrangement(data, eopts);
    timing.enumerate_ms = ms_since(t0);
    t0 = Clock::now();
    if (auto* inf = std::get_if<InfiniteL0>(&arr)) {
      res.report = infinite_report(data, *inf);
      res.exit_code = kInfinite;
    } else {
      try {
        res.report = invariants_of(std::get<Arrangement>(arr));
      } catch (const UnsupportedCodimension& e) {
        res.report = e.report();
        res.exit_code = kUnsupported;
      }
    }
    timing.invariants_ms = ms_since(t0);
  } else {
    res.exit_code = kValidation;
  }

  ReportInput in;
  in.data = &data;
  in.validation = &res.validation;
  in.invariants = res.report ? &*res.report : nullptr;
  in.dump_arrangement = options.dump_arrangement;
  if (options.timing) in.timing = timing;
  res.json = report_json(in);
  return res;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cohomology of projection point patterns from singular-space combinatorics", "patcoh"};
  app.require_subcommand(1);

  bool list_json = false;
  auto* list = app.add_subcommand("list", "List the built-in data sets");
  list->add_flag("--json", list_json, "Machine-readable output");

  ComputeFlags cf;
  auto* compute = app.add_subcommand("compute", "Compute cohomology ranks for a catalog entry or input file");
  compute->add_option("source", cf.source, "Catalog name or path to a patcoh/1 JSON file")->required();
  compute->add_flag("--table", cf.table, "Print one table row");
  compute->add_flag("--json", cf.json, "Print the patcoh-report/1 document");
  compute->add_flag("--dump-arrangement", cf.dump, "Include per-class data in the JSON report");
  compute->add_flag("--no-timing", cf.no_timing, "Omit timing_ms from the JSON report");

  std::string vsource;
  bool vjson = false;
  auto* val = app.add_subcommand("validate", "Check the structural assumptions on an input");
  val->add_option("source", vsource, "Path to a patcoh/1 JSON file or a catalog name")->required();
  val->add_flag("--json", vjson, "Machine-readable output");

  std::string ename, epath;
  auto* exp = app.add_subcommand("export", "Write a catalog entry in the input format");
  exp->add_option("name", ename, "Catalog name")->required();
  exp->add_option("-o,--output", epath, "Output file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*list) return cmd_list(list_json, out);
    if (*compute) return cmd_compute(cf, out, err);
    if (*val) return cmd_validate(vsource, vjson, out);
    if (*exp) return cmd_export(ename, epath, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace patcoh::cli
