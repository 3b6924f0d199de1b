#include "patcoh/model.hpp"

#include <algorithm>

#include "json.hpp"

namespace patcoh {

using nlohmann::json;
using nlohmann::ordered_json;

Hyperplane canonical_hyperplane(const Hyperplane& h) {
  auto lead = std::find_if(h.normal.begin(), h.normal.end(), [](const FElem& x) { return !x.is_zero(); });
  if (lead == h.normal.end()) throw DomainError("hyperplane with zero normal");
  const FElem scale = lead->inverse();
  Hyperplane out;
  out.normal.reserve(h.normal.size());
  for (const FElem& x : h.normal) out.normal.push_back(x * scale);
  out.offset = h.offset * scale;
  return out;
}

RatMatrix generator_matrix(const ProjectionData& data) {
  const std::size_t rows = data.dim * data.field.degree();
  RatMatrix g(rows, data.rank());
  for (std::size_t j = 0; j < data.rank(); ++j) {
    const auto r = restrict_scalars(data.generators[j], data.field);
    for (std::size_t i = 0; i < rows; ++i) g(i, j) = r[i];
  }
  return g;
}

std::string_view to_string(ParseErrc code) {
  switch (code) {
    case ParseErrc::Syntax: return "syntax";
    case ParseErrc::Schema: return "schema";
    case ParseErrc::BadNumber: return "bad_number";
    case ParseErrc::NonSquarefree: return "non_squarefree";
    case ParseErrc::IrrationalOverQ: return "irrational_over_q";
    case ParseErrc::Shape: return "shape";
    case ParseErrc::ZeroNormal: return "zero_normal";
  }
  return "unknown";
}

namespace {

[[noreturn]] void fail(ParseErrc code, const std::string& msg) {
  throw ParseError(code, std::string(to_string(code)) + ": " + msg);
}

const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) fail(ParseErrc::Schema, std::string("missing key '") + key + "'");
  return obj.at(key);
}

Rat parse_number(const json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_rat(v.get<std::string>());
    if (v.is_number_integer()) return Rat(v.dump());
  } catch (const DomainError& e) {
    fail(ParseErrc::BadNumber, where + ": " + e.what());
  }
  fail(ParseErrc::BadNumber, where + ": expected a rational string");
}

FElem parse_felem(const json& v, FieldSpec field, const std::string& where) {
  if (!v.is_array() || v.empty() || v.size() > 2) {
    fail(ParseErrc::Schema, where + ": field element must be [\"a\"] or [\"a\", \"b\"]");
  }
  Rat a = parse_number(v[0], where);
  Rat b = v.size() == 2 ? parse_number(v[1], where) : Rat(0);
  if (field.is_rational() && sgn(b) != 0) fail(ParseErrc::IrrationalOverQ, where + ": sqrt part over Q");
  return FElem(field, a, b);
}

FVector parse_fvector(const json& v, FieldSpec field, std::size_t dim, const std::string& where) {
  if (!v.is_array()) fail(ParseErrc::Schema, where + ": expected an array");
  if (v.size() != dim) {
    fail(ParseErrc::Shape, where + ": has " + std::to_string(v.size()) + " coordinates, dim is " + std::to_string(dim));
  }
  FVector out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(parse_felem(v[i], field, where));
  return out;
}

ordered_json felem_json(const FElem& x) {
  ordered_json j = ordered_json::array({to_string(x.a())});
  if (!x.field().is_rational()) j.push_back(to_string(x.b()));
  return j;
}

ordered_json fvector_json(const FVector& v) {
  ordered_json j = ordered_json::array();
  for (const FElem& x : v) j.push_back(felem_json(x));
  return j;
}

}  // namespace

ProjectionData parse_projection_data(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ParseErrc::Syntax, e.what());
  }
  if (!doc.is_object()) fail(ParseErrc::Schema, "top level must be an object");
  const json& schema = require(doc, "schema");
  if (!schema.is_string() || schema.get<std::string>() != "patcoh/1") {
    fail(ParseErrc::Schema, "schema must be \"patcoh/1\"");
  }

  ProjectionData data;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) fail(ParseErrc::Schema, "name must be a string");
    data.name = doc["name"].get<std::string>();
  }

  const json& field = require(doc, "field");
  const json& kind = require(field, "kind");
  if (kind == "Q") {
    data.field = FieldSpec::rationals();
  } else if (kind == "Qsqrt") {
    const json& d = require(field, "D");
    if (!d.is_number_integer()) fail(ParseErrc::Schema, "field.D must be an integer");
    try {
      data.field = FieldSpec::quadratic(d.get<long>());
    } catch (const DomainError& e) {
      fail(ParseErrc::NonSquarefree, e.what());
    }
  } else {
    fail(ParseErrc::Schema, "field.kind must be \"Q\" or \"Qsqrt\"");
  }

  const json& dim = require(doc, "dim");
  if (!dim.is_number_unsigned() || dim.get<std::size_t>() == 0) fail(ParseErrc::Schema, "dim must be a positive integer");
  data.dim = dim.get<std::size_t>();

  const json& gens = require(doc, "generators");
  if (!gens.is_array()) fail(ParseErrc::Schema, "generators must be an array");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    data.generators.push_back(parse_fvector(gens[i], data.field, data.dim, "generator " + std::to_string(i)));
  }

  const json& planes = require(doc, "hyperplanes");
  if (!planes.is_array()) fail(ParseErrc::Schema, "hyperplanes must be an array");
  for (std::size_t i = 0; i < planes.size(); ++i) {
    const std::string where = "hyperplane " + std::to_string(i);
    Hyperplane h;
    h.normal = parse_fvector(require(planes[i], "normal"), data.field, data.dim, where);
    h.offset = planes[i].contains("offset") ? parse_felem(planes[i]["offset"], data.field, where)
                                            : FElem::zero(data.field);
    try {
      data.planes.push_back(canonical_hyperplane(h));
    } catch (const DomainError&) {
      fail(ParseErrc::ZeroNormal, where + ": zero normal");
    }
  }
  return data;
}

std::string serialize(const ProjectionData& data) {
  ordered_json doc;
  doc["schema"] = "patcoh/1";
  doc["name"] = data.name;
  ordered_json field;
  if (data.field.is_rational()) {
    field["kind"] = "Q";
  } else {
    field["kind"] = "Qsqrt";
    field["D"] = data.field.radicand();
  }
  doc["field"] = field;
  doc["dim"] = data.dim;
  ordered_json gens = ordered_json::array();
  for (const auto& g : data.generators) gens.push_back(fvector_json(g));
  doc["generators"] = gens;
  ordered_json planes = ordered_json::array();
  for (const auto& h : data.planes) {
    ordered_json p;
    p["normal"] = fvector_json(h.normal);
    p["offset"] = felem_json(h.offset);
    planes.push_back(p);
  }
  doc["hyperplanes"] = planes;
  return doc.dump(2) + "\n";
}

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Note: return "note";
  }
  return "unknown";
}

bool ValidationReport::has(std::string_view code) const {
  return std::any_of(findings.begin(), findings.end(), [&](const Finding& f) { return f.code == code; });
}

namespace {

std::size_t field_rank_of(const std::vector<FVector>& vs, std::size_t dim) {
  FMatrix m(0, dim);
  for (const auto& v : vs) m.append_row(v);
  return field_rank(m);
}

// Connected components of the linear matroid on the (spanning) normal set.
// With a basis B, a non-basis x and b in B lie on a common circuit iff b has
// a nonzero coefficient in x; these fundamental circuits link the components.
std::vector<std::size_t> matroid_components(const std::vector<FVector>& normals, std::size_t dim) {
  const std::size_t k = normals.size();
  std::vector<std::size_t> basis, rest;
  std::vector<FVector> picked;
  for (std::size_t i = 0; i < k; ++i) {
    picked.push_back(normals[i]);
    if (field_rank_of(picked, dim) == picked.size()) {
      basis.push_back(i);
    } else {
      picked.pop_back();
      rest.push_back(i);
    }
  }
  std::vector<std::size_t> parent(k);
  for (std::size_t i = 0; i < k; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t x : rest) {
    for (std::size_t bi = 0; bi < basis.size(); ++bi) {
      std::vector<FVector> swapped = picked;
      swapped[bi] = normals[x];
      if (field_rank_of(swapped, dim) == dim) parent[find(x)] = find(basis[bi]);
    }
  }
  std::vector<std::size_t> comp(k);
  for (std::size_t i = 0; i < k; ++i) comp[i] = find(i);
  return comp;
}

// A nonzero f in V with <f, g> rational for every generator makes <f, Gamma>
// a discrete subgroup of R, so Gamma cannot be dense.
bool has_rational_form(const ProjectionData& data) {
  if (data.field.is_rational()) return true;
  const std::size_t cols = 2 * data.dim;
  RatMatrix irr(data.rank(), cols);
  for (std::size_t i = 0; i < data.rank(); ++i) {
    for (std::size_t j = 0; j < data.dim; ++j) {
      const FElem& g = data.generators[i][j];
      // (fa + fb sqrt D)(ga + gb sqrt D) has sqrt part fa*gb + fb*ga
      irr(i, 2 * j) = g.b();
      irr(i, 2 * j + 1) = g.a();
    }
  }
  return rat_rank(irr) < cols;
}

}  // namespace

ValidationReport validate(const ProjectionData& data) {
  ValidationReport report;
  auto add = [&](Severity s, std::string code, std::string msg) {
    if (s == Severity::Error) report.ok = false;
    report.findings.push_back({s, std::move(code), std::move(msg)});
  };
  const std::size_t m = data.dim, n = data.rank();

  // (a) Gamma free of rank n inside V
  RatMatrix g(0, m * data.field.degree());
  for (const auto& gen : data.generators) g.append_row(restrict_scalars(gen, data.field));
  const std::size_t grank = rat_rank(g);
  if (grank != n) {
    add(Severity::Error, "generator_rank",
        "generators are not linearly independent over Q (rank " + std::to_string(grank) + " of " + std::to_string(n) + ")");
  }
  if (n <= m) {
    add(Severity::Error, "rank_too_small", "rank of Gamma must exceed dim V");
  }

  // (b) normals span V
  std::vector<FVector> directions;
  for (const auto& h : data.planes) {
    if (std::find(directions.begin(), directions.end(), h.normal) == directions.end()) directions.push_back(h.normal);
  }
  FMatrix normals(0, m);
  for (const auto& d : directions) normals.append_row(d);
  const bool spans = !directions.empty() && field_rank(normals) == m;
  if (!spans) add(Severity::Error, "normal_span", "hyperplane normals do not span V");

  // (c) indecomposability over the distinct normal directions
  if (spans && directions.size() > kMaxNormalDirections) {
    add(Severity::Error, "too_many_directions",
        "indecomposability check supports at most " + std::to_string(kMaxNormalDirections) + " normal directions");
  } else if (spans && directions.size() > 1) {
    const auto comp = matroid_components(directions, m);
    std::vector<FVector> first;
    for (std::size_t i = 0; i < directions.size(); ++i)
      if (comp[i] == comp[0]) first.push_back(directions[i]);
    if (first.size() < directions.size()) {
      const std::size_t r1 = field_rank_of(first, m);
      add(Severity::Error, "decomposable",
          "normals split into complementary subspaces of dimensions " + std::to_string(r1) + " and " +
              std::to_string(m - r1));
    }
  }

  // (d) divisibility: a finite L_0 forces rank Gamma = nu * dim V
  if (m > 0 && n % m != 0) {
    add(Severity::Warning, "rank_divisibility",
        "dim V does not divide rank Gamma; nu = " + std::to_string(n) + "/" + std::to_string(m) +
            " is not an integer, so L_0 must be infinite");
  }

  // (e) density
  if (report.ok && has_rational_form(data)) {
    add(Severity::Warning, "not_dense", "a nonzero linear form maps Gamma into Q, so Gamma is not dense in V");
  }
  add(Severity::Note, "density_assumed", "density of Gamma in V is assumed, not decided");
  return report;
}

}  // namespace patcoh
