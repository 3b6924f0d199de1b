#include "patcoh/cli/report.hpp"

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>

namespace patcoh::cli {

using nlohmann::ordered_json;

namespace {

ordered_json optional_int(const std::optional<std::int64_t>& v) { return v ? ordered_json(*v) : ordered_json(); }

ordered_json fvector_json(std::span<const FElem> v) {
  ordered_json j = ordered_json::array();
  for (const auto& x : v) j.push_back(felem_json(x));
  return j;
}

ordered_json fmatrix_json(const FMatrix& m) {
  ordered_json j = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) j.push_back(fvector_json(m.row(i)));
  return j;
}

ordered_json lattice_json(const IntLattice& l) {
  ordered_json j = ordered_json::array();
  const IntMatrix& b = l.basis();
  for (std::size_t i = 0; i < b.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (const Integer& x : b.row(i)) row.push_back(to_string(x));
    j.push_back(std::move(row));
  }
  return j;
}

ordered_json class_json(const SingularClass& c) {
  ordered_json j;
  j["id"] = c.id;
  j["dim"] = c.dim;
  j["direction"] = fmatrix_json(c.direction);
  j["point"] = fvector_json(c.point);
  j["stabilizer_rank"] = c.stabilizer.rank();
  j["stabilizer"] = lattice_json(c.stabilizer);
  return j;
}

ordered_json arrangement_json(const Arrangement& arr) {
  ordered_json j;
  ordered_json levels = ordered_json::array();
  for (const auto& level : arr.levels) {
    ordered_json lv = ordered_json::array();
    for (const auto& c : level) lv.push_back(class_json(c));
    levels.push_back(std::move(lv));
  }
  j["levels"] = std::move(levels);
  ordered_json cont = ordered_json::array();
  for (const auto& c : arr.containments) {
    cont.push_back({{"child_dim", c.child_dim},
                    {"child_id", c.child_id},
                    {"parent_dim", c.parent_dim},
                    {"parent_id", c.parent_id},
                    {"multiplicity", c.multiplicity}});
  }
  j["containments"] = std::move(cont);
  return j;
}

double round_ms(double ms) { return std::round(ms * 1000.0) / 1000.0; }

std::string status_of(const ReportInput& in) {
  if (in.invariants == nullptr) return "validation_error";
  return std::string(to_string(in.invariants->status));
}

}  // namespace

ordered_json felem_json(const FElem& x) {
  ordered_json j = ordered_json::array();
  j.push_back(to_string(x.a()));
  if (!x.field().is_rational()) j.push_back(to_string(x.b()));
  return j;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string canonical_report(const ordered_json& report) {
  ordered_json copy = report;
  copy.erase("timing_ms");
  copy.erase("digest");
  return copy.dump();
}

ordered_json report_json(const ReportInput& in) {
  const ProjectionData& data = *in.data;
  const InvariantReport* rep = in.invariants;
  ordered_json j;
  j["schema_version"] = kReportSchema;

  ordered_json input;
  input["name"] = data.name;
  input["field"] = data.field.name();
  input["m"] = data.dim;
  input["n"] = data.rank();
  input["d"] = data.pattern_dim();
  input["nu"] = rep && rep->nu ? ordered_json(*rep->nu) : ordered_json();
  j["input"] = std::move(input);
  j["status"] = status_of(in);

  ordered_json validation;
  validation["ok"] = in.validation ? in.validation->ok : true;
  ordered_json findings = ordered_json::array();
  if (in.validation) {
    for (const auto& f : in.validation->findings)
      findings.push_back({{"severity", to_string(f.severity)}, {"code", f.code}, {"message", f.message}});
  }
  validation["findings"] = std::move(findings);
  j["validation"] = std::move(validation);

  ordered_json results;
  if (rep) {
    results["L"] = rep->L;
    results["tilde_L1"] = optional_int(rep->tilde_l1);
    results["e"] = optional_int(rep->e);
    results["r"] = rep->r;
    results["R"] = rep->R;
    results["D"] = rep->D;
    results["H"] = rep->H;
    results["K"] = rep->K ? ordered_json{{"K0", rep->K->first}, {"K1", rep->K->second}} : ordered_json();
  }
  j["results"] = rep ? std::move(results) : ordered_json();

  if (rep && rep->infinite) {
    const InfiniteL0& w = *rep->infinite;
    j["infinite"] = {{"witness_level", w.witness_level},
                     {"parent_id", w.parent_id},
                     {"hyperplane_id", w.hyperplane_id},
                     {"deficient_subgroup_rank", w.deficient_subgroup_rank},
                     {"group_rank", w.group_rank}};
  } else {
    j["infinite"] = nullptr;
  }
  j["diagnostics"] = rep ? rep->diagnostics : std::vector<std::string>{};
  if (in.dump_arrangement && rep && rep->arrangement) j["arrangement"] = arrangement_json(*rep->arrangement);

  j["digest"] = fnv1a_hex(canonical_report(j));
  if (in.timing) {
    j["timing_ms"] = {{"validate", round_ms(in.timing->validate_ms)},
                      {"enumerate", round_ms(in.timing->enumerate_ms)},
                      {"invariants", round_ms(in.timing->invariants_ms)}};
  }
  return j;
}

std::string render_table(const InvariantReport& rep) {
  std::vector<std::pair<std::string, std::string>> cols;
  auto group = [](std::int64_t r) {
    if (r == 0) return std::string("0");
    if (r == 1) return std::string("Z");
    return "Z^" + std::to_string(r);
  };
  for (std::size_t q = 0; q < rep.H.size(); ++q) cols.emplace_back("H^" + std::to_string(q), group(rep.H[q]));
  for (std::size_t l = 0; l < rep.L.size(); ++l) {
    cols.emplace_back("L_" + std::to_string(l), std::to_string(rep.L[l]));
    if (l == 0 && rep.e) cols.emplace_back("e", std::to_string(*rep.e));
    if (l == 1 && rep.tilde_l1) cols.emplace_back("~L_1", std::to_string(*rep.tilde_l1));
  }
  if (rep.L.empty() && rep.e) cols.emplace_back("e", std::to_string(*rep.e));
  const auto& wedge = rep.m == 2 ? rep.r : rep.R;
  const char* sym = rep.m == 2 ? "r_" : "R_";
  for (std::size_t p = 1; p + 1 < wedge.size() && p < rep.m; ++p)
    cols.emplace_back(sym + std::to_string(p), std::to_string(wedge[p]));

  std::ostringstream head, row;
  head << std::left << std::setw(20) << "tiling";
  row << std::left << std::setw(20) << rep.name;
  for (const auto& [h, v] : cols) {
    const int w = static_cast<int>(std::max(h.size(), v.size())) + 2;
    head << std::right << std::setw(w) << h;
    row << std::right << std::setw(w) << v;
  }
  return head.str() + "\n" + row.str() + "\n";
}

std::string render_summary(const InvariantReport& rep) {
  std::ostringstream os;
  os << rep.name << ": " << to_string(rep.status) << " (field " << rep.field.name() << ", m = " << rep.m
     << ", n = " << rep.n << ", d = " << rep.d << ")\n";
  if (!rep.L.empty()) {
    os << "  L =";
    for (auto x : rep.L) os << ' ' << x;
    os << '\n';
  }
  if (rep.e) os << "  e = " << *rep.e << '\n';
  for (std::size_t q = 0; q < rep.H.size(); ++q) os << "  rank H^" << q << " = " << rep.H[q] << '\n';
  if (rep.K) os << "  rank K_0 = " << rep.K->first << ", rank K_1 = " << rep.K->second << '\n';
  for (const auto& d : rep.diagnostics) os << "  " << d << '\n';
  return os.str();
}

}  // namespace patcoh::cli
