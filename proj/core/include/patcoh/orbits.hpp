#pragma once

// Gamma-orbit classes of singular spaces (intersections of Gamma-translates of
// the hyperplanes), enumerated level by level from the hyperplanes down to
// points. Orbit questions are decided exactly: a translate family is
// classified by the index of a subgroup of Z^n, and two spaces are equivalent
// iff their directions agree and their points differ by an element of
// (acting group) + (direction), which is a mixed integer/rational linear system.

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "patcoh/linalg.hpp"
#include "patcoh/model.hpp"

namespace patcoh {

/// Affine subspace point + span(direction rows); direction in canonical RREF.
struct Flat {
  FMatrix direction;
  FVector point;

  std::size_t dim() const { return direction.rows(); }
};

struct SingularClass {
  std::size_t dim = 0;
  FMatrix direction;  // canonical RREF over the field, dim x m
  FVector point;      // a point of the representative space
  IntLattice stabilizer;  // {y in Z^n : sum y_i g_i in direction}, HNF
  std::size_t id = 0;     // index within its level

  Flat flat() const { return {direction, point}; }
};

/// A classification subgroup of rank below the acting group: infinitely many
/// orbit classes, hence L_0 infinite.
struct InfiniteL0 {
  std::size_t witness_level = 0;          // dimension of the spaces being classified
  std::size_t parent_id = 0;              // class id at witness_level + 1
  std::size_t hyperplane_id = 0;          // hyperplane class id
  std::size_t deficient_subgroup_rank = 0;
  std::size_t group_rank = 0;
};

/// Relative class: an orbit of singular spaces inside a representative of a
/// parent class under the parent's stabilizer.
struct RelativeClass {
  SingularClass cls;
  std::size_t global_id = 0;  // the Gamma-orbit class it belongs to
};

struct RelativeArrangement {
  std::size_t parent_dim = 0;
  std::size_t parent_id = 0;
  std::vector<std::vector<RelativeClass>> levels;  // levels[l], l < parent_dim

  /// L_l^Theta.
  std::size_t count(std::size_t level) const { return level < levels.size() ? levels[level].size() : 0; }
};

/// (child class at child_dim) occurs `multiplicity` times among the relative
/// classes of (parent class at parent_dim).
struct Containment {
  std::size_t child_dim = 0;
  std::size_t child_id = 0;
  std::size_t parent_dim = 0;
  std::size_t parent_id = 0;
  std::size_t multiplicity = 0;
};

struct Arrangement {
  ProjectionData data;
  std::vector<std::vector<SingularClass>> levels;  // levels[l] for l = 0 .. m-1
  std::vector<std::vector<RelativeArrangement>> relative;  // relative[l][id], empty for l = 0
  std::vector<Containment> containments;

  /// L_l.
  std::size_t count(std::size_t level) const { return levels.at(level).size(); }
  bool has_relative() const { return !relative.empty(); }
};

inline constexpr std::size_t kDefaultMaxClasses = 100000;

struct EnumerateOptions {
  std::size_t max_classes = kDefaultMaxClasses;
  bool with_relative = true;
};

using EnumerationResult = std::variant<Arrangement, InfiniteL0>;

/// The top level: one class per Gamma-orbit of input hyperplanes.
std::vector<SingularClass> hyperplane_classes(const ProjectionData& data);

/// (p) intersected with (h + x). Throws DomainError if direction(p) lies in direction(h).
Flat intersect_affine(const Flat& p, const Hyperplane& h, std::span<const FElem> x);

/// The orbit classes of {rep(p) cap (h + x) : x in Gamma} modulo `group`.
struct PairFamily {
  FMatrix direction;
  IntLattice subgroup;                    // classification subgroup H of Z^n
  std::vector<IntVector> translations;    // canonical coset representatives
  std::vector<SingularClass> candidates;  // one per translation (ids unset)
};

std::variant<PairFamily, InfiniteL0> classify_pair(const ProjectionData& data, const SingularClass& p,
                                                   const SingularClass& hclass, const IntLattice& group,
                                                   std::size_t max_classes = kDefaultMaxClasses);

/// True iff the directions agree and the points differ by group + direction.
bool same_orbit(const ProjectionData& data, const Flat& a, const Flat& b, const IntLattice& group);

/// Requires validate(data).ok. Throws ResourceError past the class cap.
EnumerationResult enumerate_arrangement(const ProjectionData& data, const EnumerateOptions& options = {});

/// Classes of singular spaces inside a representative of `parent`, modulo its
/// stabilizer. Multiplicity semantics: distinct relative classes may belong to
/// the same global class.
RelativeArrangement relative_arrangement(const SingularClass& parent, const Arrangement& arrangement,
                                         std::size_t max_classes = kDefaultMaxClasses);

}  // namespace patcoh
