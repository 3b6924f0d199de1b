#include "patcoh/orbits.hpp"

#include <algorithm>

namespace patcoh {

namespace {

// rep(p) cap {<normal, v> = c}: point + t*u0 + direction', with <normal, u0> = 1.
struct Section {
  FVector u0;
  FMatrix direction;  // canonical RREF of direction(p) cap normal-perp
  FVector base;       // intersection point for the untranslated hyperplane
};

Section section(const Flat& p, const Hyperplane& h) {
  const std::size_t m = h.normal.size();
  const FieldSpec field = h.offset.field();
  std::size_t lead = p.direction.rows();
  std::vector<FElem> pairings;
  for (std::size_t i = 0; i < p.direction.rows(); ++i) {
    pairings.push_back(dot(h.normal, p.direction.row(i)));
    if (lead == p.direction.rows() && !pairings.back().is_zero()) lead = i;
  }
  if (lead == p.direction.rows()) throw DomainError("improper intersection: direction lies in the hyperplane direction");

  Section s;
  const FElem inv = pairings[lead].inverse();
  for (std::size_t j = 0; j < m; ++j) s.u0.push_back(p.direction(lead, j) * inv);

  FMatrix rest(0, m);
  for (std::size_t i = 0; i < p.direction.rows(); ++i) {
    if (i == lead) continue;
    FVector v;
    for (std::size_t j = 0; j < m; ++j) v.push_back(p.direction(i, j) - pairings[i] * s.u0[j]);
    rest.append_row(v);
  }
  s.direction = rref_over_field(rest);

  const FElem shift = h.offset - dot(h.normal, p.point);
  s.base = p.point;
  for (std::size_t j = 0; j < m; ++j) s.base[j] += shift * s.u0[j];
  (void)field;
  return s;
}

Hyperplane hyperplane_of(const SingularClass& hclass, FieldSpec field) {
  FMatrix normal = field_nullspace(hclass.direction, field);
  if (normal.rows() != 1) throw DomainError("class is not a hyperplane class");
  Hyperplane h{normal.row_vector(0), FElem::zero(field)};
  h = canonical_hyperplane(h);
  h.offset = dot(h.normal, hclass.point);
  return h;
}

class Engine {
 public:
  Engine(const ProjectionData& data, std::size_t max_classes)
      : data_(data),
        field_(data.field),
        m_(data.dim),
        n_(data.rank()),
        gens_(generator_matrix(data)),
        max_classes_(max_classes) {}

  std::size_t rank() const { return n_; }

  RatMatrix restricted_basis(const FMatrix& dir) const {
    const std::size_t rows = m_ * field_.degree();
    RatMatrix b(rows, dir.rows() * field_.degree());
    const FElem root(field_, 0, field_.is_rational() ? 0 : 1);
    std::size_t col = 0;
    for (std::size_t i = 0; i < dir.rows(); ++i) {
      auto put = [&](const FVector& v) {
        const auto r = restrict_scalars(v, field_);
        for (std::size_t k = 0; k < rows; ++k) b(k, col) = r[k];
        ++col;
      };
      FVector u = dir.row_vector(i);
      put(u);
      if (!field_.is_rational()) {
        for (auto& x : u) x *= root;
        put(u);
      }
    }
    return b;
  }

  // Rows annihilating the restricted direction exactly.
  RatMatrix projection(const FMatrix& dir) const {
    if (dir.rows() == 0) return to_rational(identity_matrix(m_ * field_.degree()));
    return rat_nullspace(restricted_basis(dir).transposed());
  }

  const IntLattice& stabilizer(const FMatrix& dir) {
    for (const auto& [d, lat] : stabilizers_) {
      if (d == dir) return lat;
    }
    stabilizers_.emplace_back(dir, integer_kernel(projection(dir) * gens_));
    return stabilizers_.back().second;
  }

  // Decides point differences modulo group + direction for one fixed pair.
  struct OrbitTest {
    FMatrix direction;
    RatMatrix proj;
    Integer scale;
    IntLattice image;
  };

  OrbitTest make_test(const FMatrix& dir, const IntLattice& group) const {
    OrbitTest t;
    t.direction = dir;
    t.proj = projection(dir);
    RatMatrix images = t.proj * gens_ * to_rational(group.basis().transposed());
    t.scale = 1;
    for (std::size_t i = 0; i < images.rows(); ++i)
      for (std::size_t j = 0; j < images.cols(); ++j)
        mpz_lcm(t.scale.get_mpz_t(), t.scale.get_mpz_t(), images(i, j).get_den_mpz_t());
    IntMatrix gens(images.cols(), images.rows());
    for (std::size_t i = 0; i < images.rows(); ++i)
      for (std::size_t j = 0; j < images.cols(); ++j) {
        Rat v = images(i, j) * t.scale;
        gens(j, i) = v.get_num();
      }
    t.image = IntLattice::from_generators(gens);
    return t;
  }

  bool equivalent(const OrbitTest& t, const FVector& a, const FVector& b) const {
    FVector diff = a;
    for (std::size_t j = 0; j < m_; ++j) diff[j] -= b[j];
    const auto w = restrict_scalars(diff, field_);
    IntVector v(t.proj.rows());
    for (std::size_t i = 0; i < t.proj.rows(); ++i) {
      Rat s = 0;
      for (std::size_t k = 0; k < w.size(); ++k) {
        if (sgn(w[k]) != 0) s += t.proj(i, k) * w[k];
      }
      s *= t.scale;
      if (s.get_den() != 1) return false;
      v[i] = s.get_num();
    }
    return t.image.contains(v);
  }

  std::vector<SingularClass> hyperplane_classes() {
    std::vector<SingularClass> classes;
    std::vector<OrbitTest> tests;
    const IntLattice full = IntLattice::full(n_);
    for (const Hyperplane& h : data_.planes) {
      FMatrix nm(0, m_);
      nm.append_row(h.normal);
      FMatrix dir = field_nullspace(nm, field_);
      FVector point(m_, FElem::zero(field_));
      const auto lead = std::find_if(h.normal.begin(), h.normal.end(), [](const FElem& x) { return !x.is_zero(); });
      point[static_cast<std::size_t>(lead - h.normal.begin())] = h.offset / *lead;

      auto test = std::find_if(tests.begin(), tests.end(), [&](const OrbitTest& t) { return t.direction == dir; });
      if (test == tests.end()) {
        tests.push_back(make_test(dir, full));
        test = tests.end() - 1;
      }
      bool seen = std::any_of(classes.begin(), classes.end(), [&](const SingularClass& c) {
        return c.direction == dir && equivalent(*test, point, c.point);
      });
      if (seen) continue;
      SingularClass c;
      c.dim = m_ - 1;
      c.stabilizer = stabilizer(dir);
      c.direction = std::move(dir);
      c.point = std::move(point);
      c.id = classes.size();
      classes.push_back(std::move(c));
      hplanes_.push_back(h);
    }
    return classes;
  }

  const std::vector<Hyperplane>& hyperplanes() const { return hplanes_; }

  std::variant<PairFamily, InfiniteL0> classify(const SingularClass& p, const Hyperplane& h,
                                                const IntLattice& group) {
    const Section s = section(p.flat(), h);
    std::vector<FElem> pairing;  // <normal, g_i>
    for (const auto& g : data_.generators) pairing.push_back(dot(h.normal, g));

    // H = {y in Z^n : Lin(y) in group + direction'}, Lin(y) = sum y_i <normal, g_i> u0.
    const std::size_t rows = m_ * field_.degree();
    const std::size_t r = group.rank();
    RatMatrix a(rows, n_ + r);
    for (std::size_t i = 0; i < n_; ++i) {
      FVector lin = s.u0;
      for (auto& x : lin) x *= pairing[i];
      const auto rl = restrict_scalars(lin, field_);
      for (std::size_t k = 0; k < rows; ++k) a(k, i) = rl[k];
    }
    const RatMatrix group_vectors = gens_ * to_rational(group.basis().transposed());
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < rows; ++k) a(k, n_ + j) = -group_vectors(k, j);
    const RatVector zero(rows, Rat(0));
    const auto solution = mixed_solve(a, restricted_basis(s.direction), zero);
    IntMatrix proj(0, n_);
    for (std::size_t i = 0; i < solution->lattice.rank(); ++i) {
      const auto row = solution->lattice.basis().row(i);
      proj.append_row(row.first(n_));
    }

    PairFamily fam;
    fam.direction = s.direction;
    fam.subgroup = IntLattice::from_generators(proj);
    if (fam.subgroup.rank() < n_) {
      InfiniteL0 inf;
      inf.witness_level = s.direction.rows();
      inf.deficient_subgroup_rank = fam.subgroup.rank();
      inf.group_rank = n_;
      return inf;
    }
    const IntLattice full = IntLattice::full(n_);
    const Integer index = *lattice_index(full, fam.subgroup);
    if (index > max_classes_) {
      throw ResourceError("orbit family of " + index.get_str() + " classes exceeds the cap of " +
                          std::to_string(max_classes_));
    }
    fam.translations = coset_reps(full, fam.subgroup);
    const IntLattice& stab = stabilizer(s.direction);
    for (const IntVector& y : fam.translations) {
      FElem t = FElem::zero(field_);
      for (std::size_t i = 0; i < n_; ++i) {
        if (sgn(y[i]) != 0) t += FElem(field_, y[i]) * pairing[i];
      }
      SingularClass c;
      c.dim = s.direction.rows();
      c.direction = s.direction;
      c.point = s.base;
      for (std::size_t j = 0; j < m_; ++j) c.point[j] += t * s.u0[j];
      c.stabilizer = stab;
      fam.candidates.push_back(std::move(c));
    }
    return fam;
  }

  using Levels = std::vector<std::vector<SingularClass>>;

  // All classes below `top` modulo `group`, level by level.
  std::variant<Levels, InfiniteL0> descend(std::vector<SingularClass> top, const IntLattice& group) {
    const std::size_t top_dim = top.front().dim;
    Levels levels(top_dim + 1);
    levels[top_dim] = std::move(top);
    for (std::size_t l = top_dim; l-- > 0;) {
      std::vector<SingularClass> candidates;
      for (const SingularClass& p : levels[l + 1]) {
        for (std::size_t hi = 0; hi < hplanes_.size(); ++hi) {
          const Hyperplane& h = hplanes_[hi];
          bool proper = false;
          for (std::size_t i = 0; i < p.direction.rows() && !proper; ++i) {
            proper = !dot(h.normal, p.direction.row(i)).is_zero();
          }
          if (!proper) continue;
          auto res = classify(p, h, group);
          if (auto* inf = std::get_if<InfiniteL0>(&res)) {
            inf->parent_id = p.id;
            inf->hyperplane_id = hi;
            return *inf;
          }
          auto& fam = std::get<PairFamily>(res);
          for (auto& c : fam.candidates) candidates.push_back(std::move(c));
          if (candidates.size() > max_classes_ * std::max<std::size_t>(hplanes_.size(), 1)) {
            throw ResourceError("candidate count at level " + std::to_string(l) + " exceeds the cap");
          }
        }
      }
      levels[l] = dedup(std::move(candidates), group, l);
    }
    return levels;
  }

  std::vector<SingularClass> dedup(std::vector<SingularClass> candidates, const IntLattice& group, std::size_t level) {
    struct Bucket {
      OrbitTest test;
      std::vector<std::size_t> members;
    };
    std::vector<Bucket> buckets;
    std::vector<SingularClass> classes;
    for (auto& c : candidates) {
      auto b = std::find_if(buckets.begin(), buckets.end(), [&](const Bucket& x) { return x.test.direction == c.direction; });
      if (b == buckets.end()) {
        buckets.push_back({make_test(c.direction, group), {}});
        b = buckets.end() - 1;
      }
      bool seen = std::any_of(b->members.begin(), b->members.end(),
                              [&](std::size_t k) { return equivalent(b->test, c.point, classes[k].point); });
      if (seen) continue;
      c.id = classes.size();
      b->members.push_back(c.id);
      classes.push_back(std::move(c));
      if (classes.size() > max_classes_) {
        throw ResourceError("more than " + std::to_string(max_classes_) + " classes at level " + std::to_string(level));
      }
    }
    return classes;
  }

  // Maps a flat to its global class at `level`.
  std::size_t global_class(const Levels& global, const SingularClass& c) {
    const IntLattice full = IntLattice::full(n_);
    auto test = std::find_if(global_tests_.begin(), global_tests_.end(),
                             [&](const OrbitTest& t) { return t.direction == c.direction; });
    if (test == global_tests_.end()) {
      global_tests_.push_back(make_test(c.direction, full));
      test = global_tests_.end() - 1;
    }
    for (const SingularClass& g : global[c.dim]) {
      if (g.direction == c.direction && equivalent(*test, c.point, g.point)) return g.id;
    }
    throw ConsistencyError("relative class does not belong to any enumerated global class");
  }

  RelativeArrangement relative(const SingularClass& parent, const Levels& global) {
    SingularClass top = parent;
    top.id = 0;
    auto res = descend({top}, parent.stabilizer);
    if (std::holds_alternative<InfiniteL0>(res)) {
      throw ConsistencyError("infinitely many relative classes inside a class of a finite arrangement");
    }
    auto& levels = std::get<Levels>(res);
    RelativeArrangement rel;
    rel.parent_dim = parent.dim;
    rel.parent_id = parent.id;
    rel.levels.resize(parent.dim);
    for (std::size_t l = 0; l < parent.dim; ++l) {
      for (auto& c : levels[l]) {
        RelativeClass rc;
        rc.global_id = global_class(global, c);
        rc.cls = std::move(c);
        rel.levels[l].push_back(std::move(rc));
      }
    }
    return rel;
  }

 private:
  const ProjectionData& data_;
  FieldSpec field_;
  std::size_t m_;
  std::size_t n_;
  RatMatrix gens_;
  std::size_t max_classes_;
  std::vector<Hyperplane> hplanes_;
  std::vector<std::pair<FMatrix, IntLattice>> stabilizers_;
  std::vector<OrbitTest> global_tests_;
};

std::vector<Containment> containments_of(const Arrangement& arr) {
  std::vector<Containment> out;
  for (std::size_t pl = 1; pl < arr.relative.size(); ++pl) {
    for (const RelativeArrangement& rel : arr.relative[pl]) {
      for (std::size_t l = 0; l < rel.levels.size(); ++l) {
        std::vector<std::size_t> mult(arr.levels[l].size(), 0);
        for (const RelativeClass& rc : rel.levels[l]) ++mult[rc.global_id];
        for (std::size_t id = 0; id < mult.size(); ++id) {
          if (mult[id] == 0) continue;
          out.push_back({l, id, pl, rel.parent_id, mult[id]});
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<SingularClass> hyperplane_classes(const ProjectionData& data) {
  Engine engine(data, kDefaultMaxClasses);
  return engine.hyperplane_classes();
}

Flat intersect_affine(const Flat& p, const Hyperplane& h, std::span<const FElem> x) {
  Hyperplane shifted = h;
  shifted.offset += dot(h.normal, x);
  Section s = section(p, shifted);
  return {std::move(s.direction), std::move(s.base)};
}

std::variant<PairFamily, InfiniteL0> classify_pair(const ProjectionData& data, const SingularClass& p,
                                                   const SingularClass& hclass, const IntLattice& group,
                                                   std::size_t max_classes) {
  Engine engine(data, max_classes);
  auto res = engine.classify(p, hyperplane_of(hclass, data.field), group);
  if (auto* inf = std::get_if<InfiniteL0>(&res)) {
    inf->parent_id = p.id;
    inf->hyperplane_id = hclass.id;
  }
  return res;
}

bool same_orbit(const ProjectionData& data, const Flat& a, const Flat& b, const IntLattice& group) {
  if (!(a.direction == b.direction)) return false;
  Engine engine(data, kDefaultMaxClasses);
  const RatMatrix group_vectors = generator_matrix(data) * to_rational(group.basis().transposed());
  FVector diff = a.point;
  for (std::size_t j = 0; j < diff.size(); ++j) diff[j] -= b.point[j];
  const auto c = restrict_scalars(diff, data.field);
  return mixed_solve(group_vectors, engine.restricted_basis(a.direction), c).has_value();
}

EnumerationResult enumerate_arrangement(const ProjectionData& data, const EnumerateOptions& options) {
  Arrangement arr;
  arr.data = data;
  Engine engine(arr.data, options.max_classes);
  auto top = engine.hyperplane_classes();
  if (top.empty()) throw DomainError("no hyperplanes");
  auto res = engine.descend(std::move(top), IntLattice::full(engine.rank()));
  if (auto* inf = std::get_if<InfiniteL0>(&res)) return *inf;
  arr.levels = std::move(std::get<Engine::Levels>(res));

  if (options.with_relative) {
    arr.relative.resize(arr.levels.size());
    for (std::size_t l = 1; l < arr.levels.size(); ++l) {
      for (const SingularClass& c : arr.levels[l]) arr.relative[l].push_back(engine.relative(c, arr.levels));
    }
    arr.containments = containments_of(arr);
  }
  return arr;
}

RelativeArrangement relative_arrangement(const SingularClass& parent, const Arrangement& arrangement,
                                         std::size_t max_classes) {
  if (parent.dim == 0) throw DomainError("relative arrangement of a point");
  Engine engine(arrangement.data, max_classes);
  engine.hyperplane_classes();
  return engine.relative(parent, arrangement.levels);
}

}  // namespace patcoh
