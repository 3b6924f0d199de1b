#include <map>

#include "doctest.h"
#include "support.hpp"

#include "patcoh/catalog.hpp"
#include "patcoh/orbits.hpp"

using namespace patcoh;

namespace {

const FieldSpec Q5 = FieldSpec::quadratic(5);
FElem q5(Rat a, Rat b = 0) { return FElem(Q5, a, b); }

const Arrangement& arrangement(const std::string& name) {
  static std::map<std::string, Arrangement> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    auto res = enumerate_arrangement(catalog::build(name).data);
    REQUIRE(std::holds_alternative<Arrangement>(res));
    it = cache.emplace(name, std::get<Arrangement>(std::move(res))).first;
  }
  return it->second;
}

FVector lattice_point(const ProjectionData& d, std::span<const Integer> y) {
  FVector p(d.dim, FElem::zero(d.field));
  for (std::size_t i = 0; i < d.rank(); ++i)
    for (std::size_t c = 0; c < d.dim; ++c) p[c] = p[c] + FElem(d.field, Rat(y[i])) * d.generators[i][c];
  return p;
}

FVector add(const FVector& a, const FVector& b) {
  FVector r;
  for (std::size_t i = 0; i < a.size(); ++i) r.push_back(a[i] + b[i]);
  return r;
}

bool in_span(const FMatrix& dir, const FVector& v) {
  FMatrix m = dir;
  m.append_row(v);
  return field_rank(m) == dir.rows();
}

IntVector random_coeffs(std::size_t n) {
  IntVector y;
  for (std::size_t i = 0; i < n; ++i) y.emplace_back(test::uniform(-4, 4));
  return y;
}

}  // namespace

TEST_CASE("hyperplane classes of the icosahedral entries") {
  CHECK(hyperplane_classes(catalog::build("ammann_kramer").data).size() == 15);
  CHECK(hyperplane_classes(catalog::build("canonical_d6").data).size() == 16);
  CHECK(hyperplane_classes(catalog::build("danzer").data).size() == 6);
  CHECK(hyperplane_classes(catalog::build("fibonacci").data).size() == 1);
}

TEST_CASE("hyperplane classes merge Gamma-translates but not other offsets") {
  auto d = catalog::build("fibonacci").data;
  d.planes.push_back({{q5(1)}, catalog::tau()});
  CHECK(hyperplane_classes(d).size() == 1);
  d.planes.push_back({{q5(1)}, q5(Rat(1, 3))});
  CHECK(hyperplane_classes(d).size() == 2);
}

TEST_CASE("intersect_affine") {
  const FElem z = q5(0), one = q5(1);
  {
    const Flat p{FMatrix::from_rows({{one, z, z}, {z, one, z}}), {z, z, z}};
    const Hyperplane h{{z, one, z}, z};
    const Flat r = intersect_affine(p, h, FVector{z, z, z});
    CHECK(r.direction == FMatrix::from_rows({{one, z, z}}));
    CHECK(r.point[1] == z);
    CHECK(r.point[2] == z);
  }
  {
    const Flat p{FMatrix::from_rows({{z, one}}), {z, z}};
    const Hyperplane h{{z, one}, z};
    const Flat r = intersect_affine(p, h, FVector{z, catalog::tau()});
    CHECK(r.dim() == 0);
    CHECK(r.point == FVector{z, catalog::tau()});
  }
  {
    const Flat p{FMatrix::from_rows({{one, z}}), {z, z}};
    CHECK_THROWS_AS(intersect_affine(p, Hyperplane{{z, one}, z}, FVector{z, z}), DomainError);
  }
  for (int trial = 0; trial < 60; ++trial) {
    FMatrix dir(0, 3);
    const std::size_t k = test::uniform(1, 3);
    for (std::size_t i = 0; i < k; ++i) dir.append_row(FVector{test::random_felem(Q5), test::random_felem(Q5), test::random_felem(Q5)});
    dir = rref_over_field(dir);
    const FVector pt{test::random_felem(Q5), test::random_felem(Q5), test::random_felem(Q5)};
    const Hyperplane h{{test::random_felem(Q5), test::random_felem(Q5), test::random_felem(Q5)}, test::random_felem(Q5)};
    bool proper = false;
    for (std::size_t i = 0; i < dir.rows(); ++i) proper = proper || !dot(dir.row(i), h.normal).is_zero();
    if (!proper) continue;
    const FVector x{test::random_felem(Q5), test::random_felem(Q5), test::random_felem(Q5)};
    const Flat r = intersect_affine({dir, pt}, h, x);
    CHECK(r.dim() + 1 == dir.rows());
    CHECK(dot(h.normal, r.point) == h.offset + dot(h.normal, x));
    FVector diff;
    for (std::size_t c = 0; c < 3; ++c) diff.push_back(r.point[c] - pt[c]);
    CHECK(in_span(dir, diff));
    for (std::size_t i = 0; i < r.direction.rows(); ++i) {
      CHECK(dot(r.direction.row(i), h.normal).is_zero());
      CHECK(in_span(dir, r.direction.row_vector(i)));
    }
  }
}

TEST_CASE("same_orbit on Fibonacci points") {
  const auto d = catalog::build("fibonacci").data;
  const auto z2 = IntLattice::full(2);
  const Flat o{FMatrix(0, 1), {q5(0)}};
  CHECK(same_orbit(d, o, o, z2));
  CHECK_FALSE(same_orbit(d, o, {FMatrix(0, 1), {q5(Rat(1, 3))}}, z2));
  CHECK(same_orbit(d, o, {FMatrix(0, 1), {q5(Rat(3, 2), Rat(1, 2))}}, z2));  // 1 + tau
  CHECK_FALSE(same_orbit(d, o, {FMatrix(0, 1), {q5(1)}}, IntLattice::from_generators(IntMatrix::from_rows({{0, 1}}))));
}

TEST_CASE("same_orbit is an equivalence on translates") {
  const auto& arr = arrangement("danzer");
  const auto& d = arr.data;
  const auto group = IntLattice::full(d.rank());
  for (const auto& level : arr.levels) {
    for (const auto& c : level) {
      const Flat a = c.flat();
      const Flat b{c.direction, add(c.point, lattice_point(d, random_coeffs(d.rank())))};
      const Flat e{c.direction, add(b.point, lattice_point(d, random_coeffs(d.rank())))};
      CHECK(same_orbit(d, a, a, group));
      CHECK(same_orbit(d, a, b, group));
      CHECK(same_orbit(d, b, a, group));
      CHECK(same_orbit(d, b, e, group));
      CHECK(same_orbit(d, a, e, group));
    }
  }
}

TEST_CASE("enumerated levels match the published counts") {
  const auto& ak = arrangement("ammann_kramer");
  CHECK(ak.count(2) == 15);
  CHECK(ak.count(1) == 46);
  CHECK(ak.count(0) == 32);
  const auto& dz = arrangement("danzer");
  CHECK(dz.count(2) == 6);
  CHECK(dz.count(1) == 15);
  CHECK(dz.count(0) == 1);
  const auto& dd = arrangement("dual_canonical_d6");
  CHECK(dd.count(2) == 15);
  CHECK(dd.count(1) == 76);
  CHECK(dd.count(0) == 64);
  const auto& fib = arrangement("fibonacci");
  CHECK(fib.levels.size() == 1);
  CHECK(fib.count(0) == 1);
}

TEST_CASE("relative line counts sum to the corrected line count plus L_1") {
  for (const char* name : {"ammann_kramer", "canonical_d6"}) {
    const auto& arr = arrangement(name);
    std::size_t total = 0;
    for (const auto& rel : arr.relative[2]) total += rel.count(1);
    CHECK_MESSAGE(total == 120, name);
  }
}

TEST_CASE("relative_arrangement reproduces the stored relative data") {
  const auto& arr = arrangement("danzer");
  for (const auto& parent : arr.levels[2]) {
    const auto rel = relative_arrangement(parent, arr);
    CHECK(rel.count(1) == arr.relative[2][parent.id].count(1));
    CHECK(rel.count(0) == arr.relative[2][parent.id].count(0));
  }
}

TEST_CASE("classes within a level are pairwise inequivalent and closed under translation") {
  for (const char* name : {"danzer", "ammann_kramer"}) {
    const auto& arr = arrangement(name);
    const auto& d = arr.data;
    const auto group = IntLattice::full(d.rank());
    for (const auto& level : arr.levels) {
      for (std::size_t i = 0; i < level.size(); ++i) {
        const Flat moved{level[i].direction, add(level[i].point, lattice_point(d, random_coeffs(d.rank())))};
        for (std::size_t j = 0; j < level.size(); ++j) {
          if (level[i].direction != level[j].direction) continue;
          CHECK(same_orbit(d, moved, level[j].flat(), group) == (i == j));
        }
      }
    }
  }
}

TEST_CASE("stabilizers: rank law and definition") {
  for (const char* name : {"fibonacci", "danzer", "ammann_kramer", "dual_canonical_d6"}) {
    const auto& arr = arrangement(name);
    const auto& d = arr.data;
    const std::size_t nu = d.rank() / d.dim;
    for (const auto& level : arr.levels) {
      for (const auto& c : level) {
        CHECK(c.stabilizer.rank() == nu * c.dim);
        for (std::size_t i = 0; i < c.stabilizer.rank(); ++i)
          CHECK(in_span(c.direction, lattice_point(d, c.stabilizer.basis().row(i))));
      }
    }
  }
}

TEST_CASE("level law: every class lies in a class one level up") {
  const auto& arr = arrangement("ammann_kramer");
  for (std::size_t l = 0; l + 1 < arr.levels.size(); ++l) {
    for (const auto& c : arr.levels[l]) {
      bool found = false;
      for (const auto& p : arr.levels[l + 1]) {
        bool inside = true;
        for (std::size_t i = 0; i < c.direction.rows() && inside; ++i) inside = in_span(p.direction, c.direction.row_vector(i));
        found = found || inside;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("a duplicated Gamma-translated plane changes nothing") {
  auto d = catalog::build("danzer").data;
  const auto& ref = arrangement("danzer");
  const IntVector y = random_coeffs(d.rank());
  Hyperplane extra = d.planes[2];
  extra.offset = extra.offset + dot(extra.normal, lattice_point(d, y));
  d.planes.push_back(extra);
  auto res = enumerate_arrangement(d);
  REQUIRE(std::holds_alternative<Arrangement>(res));
  const auto& arr = std::get<Arrangement>(res);
  REQUIRE(arr.levels.size() == ref.levels.size());
  for (std::size_t l = 0; l < arr.levels.size(); ++l) {
    REQUIRE(arr.count(l) == ref.count(l));
    for (std::size_t i = 0; i < arr.count(l); ++i) CHECK(arr.levels[l][i].stabilizer == ref.levels[l][i].stabilizer);
  }
}

TEST_CASE("infinite point classes are detected") {
  const auto d = catalog::build("infinite_demo").data;
  auto res = enumerate_arrangement(d);
  REQUIRE(std::holds_alternative<InfiniteL0>(res));
  const auto& w = std::get<InfiniteL0>(res);
  CHECK(w.witness_level == 0);
  CHECK(w.group_rank == 3);
  CHECK(w.deficient_subgroup_rank < 3);

  const auto lines = hyperplane_classes(d);
  bool some_infinite = false;
  for (const auto& p : lines)
    for (const auto& h : lines) {
      if (p.direction == h.direction) continue;
      some_infinite = some_infinite || std::holds_alternative<InfiniteL0>(classify_pair(d, p, h, IntLattice::full(3)));
    }
  CHECK(some_infinite);
}

TEST_CASE("classify_pair families for Ammann-Kramer") {
  const auto d = catalog::build("ammann_kramer").data;
  const auto planes = hyperplane_classes(d);
  const auto group = IntLattice::full(d.rank());
  std::size_t families = 0;
  for (const auto& p : planes)
    for (const auto& h : planes) {
      if (p.direction == h.direction) continue;
      auto r = classify_pair(d, p, h, group);
      REQUIRE(std::holds_alternative<PairFamily>(r));
      const auto& fam = std::get<PairFamily>(r);
      CHECK(Integer(fam.translations.size()) == *lattice_index(group, fam.subgroup));
      CHECK(fam.candidates.size() == fam.translations.size());
      for (const auto& c : fam.candidates) CHECK(c.direction == fam.direction);
      ++families;
    }
  CHECK(families > 0);
}

TEST_CASE("the class cap turns into a resource error") {
  EnumerateOptions opts;
  opts.max_classes = 3;
  CHECK_THROWS_AS(enumerate_arrangement(catalog::build("ammann_kramer").data, opts), ResourceError);
}
