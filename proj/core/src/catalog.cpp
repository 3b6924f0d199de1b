#include "patcoh/catalog.hpp"

#include <algorithm>
#include <array>

namespace patcoh::catalog {

namespace {

const FieldSpec kQ5 = FieldSpec::quadratic(5);

FElem q(long a) { return FElem(kQ5, a); }

FVector add(const FVector& x, const FVector& y, long sy = 1) {
  FVector r;
  for (std::size_t i = 0; i < x.size(); ++i) r.push_back(x[i] + q(sy) * y[i]);
  return r;
}

FVector conj(const FVector& v) {
  FVector r;
  for (const auto& x : v) r.push_back(x.conj());
  return r;
}

std::vector<Hyperplane> planes_through_origin(const std::vector<FVector>& normals) {
  std::vector<Hyperplane> out;
  for (const auto& n : normals) out.push_back(canonical_hyperplane({n, q(0)}));
  return out;
}

std::vector<FVector> d6_generators() {
  const auto w = icosahedral_star();
  return {add(w[0], w[1], -1), add(w[1], w[2], -1), add(w[2], w[3], -1),
          add(w[3], w[4], -1), add(w[4], w[5], -1), add(w[4], w[5], 1)};
}

ProjectionData make(std::string name, std::size_t dim, std::vector<FVector> gens, const std::vector<FVector>& normals) {
  ProjectionData d;
  d.name = std::move(name);
  d.field = kQ5;
  d.dim = dim;
  d.generators = std::move(gens);
  d.planes = planes_through_origin(normals);
  return d;
}

struct Descriptor {
  const char* name;
  const char* description;
};

constexpr std::array<Descriptor, 7> kEntries = {{
    {"fibonacci", "Fibonacci chain: Z + tau Z on the line, one singular point"},
    {"ammann_kramer", "Ammann-Kramer (3D Penrose) tiling: Z^6, planes normal to the 2-fold axes"},
    {"canonical_d6", "canonical D6 tiling: D6, planes normal to the 3-fold and 5-fold axes"},
    {"dual_canonical_d6", "dual canonical D6 tiling: D6, planes normal to the 2-fold axes"},
    {"danzer", "Danzer tiling: D6, planes normal to the 5-fold axes"},
    {"infinite_demo", "fixture: rank 3 in the plane, nu = 3/2, infinitely many singular points"},
    {"square_fibonacci", "fixture: product of two Fibonacci chains, decomposable normals"},
}};

}  // namespace

FElem tau() { return FElem(kQ5, Rat(1, 2), Rat(1, 2)); }
FElem sigma() { return FElem(kQ5, Rat(1, 2), Rat(-1, 2)); }

std::vector<FVector> icosahedral_star() {
  const FElem s = sigma(), z = q(0), one = q(1);
  return {{one, s, z}, {-one, s, z}, {z, one, s}, {z, -one, s}, {s, z, one}, {-s, z, one}};
}

std::vector<FVector> axis_normals(AxisKind kind) {
  const auto w = icosahedral_star();
  std::vector<FVector> out;
  switch (kind) {
    case AxisKind::FiveFold:
      return w;
    case AxisKind::TwoFold:
      for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j) {
          out.push_back(add(w[i], w[j], 1));
          out.push_back(add(w[i], w[j], -1));
        }
      return out;
    case AxisKind::ThreeFold: {
      // Triangles of mutually adjacent vertices of the physical icosahedron:
      // signed physical vectors with pairwise inner product tau.
      std::vector<FVector> v;
      for (const auto& x : w) v.push_back(conj(x));
      const FElem t = tau();
      std::vector<FVector> seen;
      for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j)
          for (std::size_t k = j + 1; k < 6; ++k)
            for (int signs = 0; signs < 8; ++signs) {
              const long si = signs & 1 ? -1 : 1, sj = signs & 2 ? -1 : 1, sk = signs & 4 ? -1 : 1;
              auto sc = [&](long s, const FVector& x) {
                FVector r;
                for (const auto& c : x) r.push_back(q(s) * c);
                return r;
              };
              const FVector a = sc(si, v[i]), b = sc(sj, v[j]), c = sc(sk, v[k]);
              if (dot(a, b) != t || dot(b, c) != t || dot(a, c) != t) continue;
              FVector n = add(add(sc(si, w[i]), sc(sj, w[j])), sc(sk, w[k]));
              // antipodal triangles give the same line
              const FVector line = canonical_hyperplane({n, q(0)}).normal;
              if (std::find(seen.begin(), seen.end(), line) != seen.end()) continue;
              seen.push_back(line);
              out.push_back(std::move(n));
            }
      return out;
    }
  }
  return out;
}

std::vector<std::string> names() {
  std::vector<std::string> out;
  for (const auto& e : kEntries) out.emplace_back(e.name);
  return out;
}

bool contains(std::string_view name) {
  return std::any_of(kEntries.begin(), kEntries.end(), [&](const Descriptor& e) { return name == e.name; });
}

CatalogEntry build(std::string_view name) {
  auto it = std::find_if(kEntries.begin(), kEntries.end(), [&](const Descriptor& e) { return name == e.name; });
  if (it == kEntries.end()) throw DomainError("unknown catalog entry '" + std::string(name) + "'");
  CatalogEntry entry;
  entry.name = it->name;
  entry.description = it->description;
  ExpectedValues ex;

  const FElem t = tau(), z = q(0), one = q(1);
  if (name == "fibonacci") {
    entry.data = make(entry.name, 1, {{one}, {t}}, {{one}});
    ex.H = {1, 2};
    ex.L0 = 1;
    ex.e = 1;
  } else if (name == "ammann_kramer") {
    entry.data = make(entry.name, 3, icosahedral_star(), axis_normals(AxisKind::TwoFold));
    ex.H = {1, 12, 71, 180};
    ex.L0 = 32, ex.e = 120, ex.L1 = 46, ex.tilde_l1 = 74, ex.L2 = 15, ex.R1 = 69, ex.R2 = 9;
  } else if (name == "canonical_d6") {
    auto normals = axis_normals(AxisKind::ThreeFold);
    for (auto& n : axis_normals(AxisKind::FiveFold)) normals.push_back(std::move(n));
    entry.data = make(entry.name, 3, d6_generators(), normals);
    ex.H = {1, 13, 72, 205};
    ex.L0 = 56, ex.e = 145, ex.L1 = 45, ex.tilde_l1 = 75, ex.L2 = 16, ex.R1 = 73, ex.R2 = 9;
  } else if (name == "dual_canonical_d6") {
    entry.data = make(entry.name, 3, d6_generators(), axis_normals(AxisKind::TwoFold));
    ex.H = {1, 12, 101, 330};
    ex.L0 = 64, ex.e = 240, ex.L1 = 76, ex.tilde_l1 = 104, ex.L2 = 15, ex.R1 = 69, ex.R2 = 9;
  } else if (name == "danzer") {
    entry.data = make(entry.name, 3, d6_generators(), axis_normals(AxisKind::FiveFold));
    ex.H = {1, 7, 16, 20};
    ex.L0 = 1, ex.e = 10, ex.L1 = 15, ex.tilde_l1 = 15, ex.L2 = 6, ex.R1 = 33, ex.R2 = 5;
  } else if (name == "infinite_demo") {
    entry.data = make(entry.name, 2, {{one, z}, {z, one}, {t, t}}, {{one, z}, {z, one}, {one, one}});
    ex.infinite = true;
  } else if (name == "square_fibonacci") {
    entry.data = make(entry.name, 2, {{one, z}, {t, z}, {z, one}, {z, t}}, {{one, z}, {z, one}});
    ex.validation_error = "decomposable";
  }
  entry.expected = ex;
  return entry;
}

}  // namespace patcoh::catalog
