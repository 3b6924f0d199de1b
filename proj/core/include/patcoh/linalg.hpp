#pragma once

// Exact rational and integer linear algebra.
//
// Every lattice is a row lattice: an IntMatrix whose rows generate it. Lattices
// are stored in row-style Hermite normal form, so equality is entrywise.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "patcoh/error.hpp"
#include "patcoh/field.hpp"

namespace patcoh {

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols = 0) {
    if (!rows.empty()) cols = rows.front().size();
    Matrix m(0, cols);
    for (const auto& r : rows) m.append_row(r);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::vector<T> row_vector(std::size_t i) const {
    auto r = row(i);
    return {r.begin(), r.end()};
  }

  void append_row(std::span<const T> r) {
    if (r.size() != cols_) throw DomainError("row length does not match matrix width");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }

  void swap_cols(std::size_t j, std::size_t k) {
    if (j == k) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, j), (*this)(i, k));
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = Matrix<Rat>;
using IntMatrix = Matrix<Integer>;
using FMatrix = Matrix<FElem>;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rat>;

IntMatrix identity_matrix(std::size_t n);
IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
RatMatrix operator*(const RatMatrix& x, const RatMatrix& y);
RatMatrix to_rational(const IntMatrix& m);

/// Bareiss determinant of a square integer matrix.
Integer determinant(const IntMatrix& m);

std::size_t int_rank(const IntMatrix& m);
/// Rank over Q (rows are scaled to integers, then fraction-free elimination).
std::size_t rat_rank(const RatMatrix& m);

/// Reduced row echelon form over the entries' field, zero rows dropped.
/// Two matrices have the same row space iff their RREFs are identical.
FMatrix rref_over_field(const FMatrix& m);
/// Rank over the entries' field.
std::size_t field_rank(const FMatrix& m);

/// Basis of {x in K^cols : m x = 0} over the field, in canonical RREF.
FMatrix field_nullspace(const FMatrix& m, FieldSpec field);

/// Basis (as rows) of the rational null space {x : m x = 0}.
RatMatrix rat_nullspace(const RatMatrix& m);

struct HermiteForm {
  IntMatrix h;  // row echelon, positive pivots, entries above pivots in [0, pivot)
  IntMatrix u;  // unimodular, h = u * m
};
HermiteForm hnf(const IntMatrix& m);

struct SmithForm {
  IntMatrix d;  // diagonal, d_1 | d_2 | ..., all >= 0
  IntMatrix u;  // unimodular
  IntMatrix v;  // unimodular, d = u * m * v
};
SmithForm snf(const IntMatrix& m);

class IntLattice {
 public:
  IntLattice() = default;
  /// The zero lattice in Z^ambient.
  explicit IntLattice(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

  static IntLattice full(std::size_t ambient);
  /// Lattice generated by the rows (dependent or zero rows allowed).
  static IntLattice from_generators(const IntMatrix& rows);

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }

  /// Integer coordinates of v in the stored basis, or nullopt if v is not in the lattice.
  std::optional<IntVector> coordinates(std::span<const Integer> v) const;
  bool contains(std::span<const Integer> v) const { return coordinates(v).has_value(); }
  bool contains(const IntLattice& sub) const;
  /// Canonical representative of v modulo the lattice (pivot entries in [0, pivot)).
  IntVector reduce(IntVector v) const;

  friend bool operator==(const IntLattice&, const IntLattice&) = default;

 private:
  std::size_t ambient_ = 0;
  IntMatrix basis_;
};

/// Basis of {x in Z^n : a x = 0}.
IntLattice integer_kernel(const RatMatrix& a);

/// A solution set base + lattice.
struct Coset {
  IntVector base;  // reduced modulo lattice
  IntLattice lattice;
};

/// {x in Z^k : there is t in Q^s with a x + b t = c}; nullopt when empty.
/// a is r x k, b is r x s, c has length r.
std::optional<Coset> mixed_solve(const RatMatrix& a, const RatMatrix& b, std::span<const Rat> c);

/// [s : h], nullopt when infinite (rank h < rank s). Throws DomainError if h is not inside s.
std::optional<Integer> lattice_index(const IntLattice& s, const IntLattice& h);

/// One canonical representative per coset of h in s, sorted lexicographically.
/// Throws DomainError when the index is infinite.
std::vector<IntVector> coset_reps(const IntLattice& s, const IntLattice& h);

/// Rank of the span of all p-fold wedges of the lattices' basis vectors inside
/// Lambda^p Z^n (coordinates: p x p minors over lexicographic column subsets).
std::size_t wedge_span_rank(std::span<const IntLattice> lats, std::size_t p);

/// Lexicographic comparison for integer vectors.
bool lex_less(std::span<const Integer> x, std::span<const Integer> y);

}  // namespace patcoh
