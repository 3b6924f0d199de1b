#pragma once

// Exact arithmetic in Q and in real quadratic fields Q(sqrt D).

#include <gmpxx.h>

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace patcoh {

using Integer = mpz_class;
using Rat = mpq_class;  // always kept canonical (mpq_canonicalize)

/// Parses "p/q" or "p" (optional sign, decimal digits). Throws DomainError on
/// malformed text or a zero denominator.
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& r);
std::string to_string(const Integer& z);

bool is_squarefree(long n);

class FieldSpec {
 public:
  enum class Kind { Rationals, Quadratic };

  static FieldSpec rationals() { return FieldSpec{}; }
  /// Throws DomainError unless d >= 2 and squarefree.
  static FieldSpec quadratic(long d);

  Kind kind() const { return radicand_ == 0 ? Kind::Rationals : Kind::Quadratic; }
  bool is_rational() const { return radicand_ == 0; }
  /// D for Q(sqrt D); 0 for Q.
  long radicand() const { return radicand_; }
  /// Degree over Q.
  int degree() const { return radicand_ == 0 ? 1 : 2; }

  std::string name() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  long radicand_ = 0;
};

/// a + b*sqrt(D). Over Q the b part is always zero.
class FElem {
 public:
  FElem() = default;
  explicit FElem(FieldSpec field, Rat a = 0, Rat b = 0);

  static FElem zero(FieldSpec field) { return FElem(field); }
  static FElem one(FieldSpec field) { return FElem(field, 1); }

  FieldSpec field() const { return field_; }
  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  /// a^2 - D b^2.
  Rat norm() const;
  /// Galois conjugate a - b*sqrt(D).
  FElem conj() const;
  FElem inverse() const;

  FElem& operator+=(const FElem& y);
  FElem& operator-=(const FElem& y);
  FElem& operator*=(const FElem& y);
  FElem& operator/=(const FElem& y);
  FElem operator-() const;

  friend FElem operator+(FElem x, const FElem& y) { return x += y; }
  friend FElem operator-(FElem x, const FElem& y) { return x -= y; }
  friend FElem operator*(FElem x, const FElem& y) { return x *= y; }
  friend FElem operator/(FElem x, const FElem& y) { return x /= y; }

  friend bool operator==(const FElem& x, const FElem& y) {
    return x.field_ == y.field_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  /// Lexicographic on (a, b); no real-embedding order is implied.
  friend std::strong_ordering operator<=>(const FElem& x, const FElem& y);

  std::string to_string() const;

 private:
  void check_field(const FElem& y) const;

  FieldSpec field_;
  Rat a_;
  Rat b_;
};

using FVector = std::vector<FElem>;

/// The elementwise field operation selected at runtime (used by the CLI and tests).
enum class ArithOp { Add, Sub, Mul, Div };
FElem fe_arith(ArithOp op, const FElem& x, const FElem& y);

inline FElem fe_conj(const FElem& x) { return x.conj(); }

/// Interleaves (a_i, b_i) per coordinate for quadratic fields, takes a_i over Q.
std::vector<Rat> restrict_scalars(std::span<const FElem> v);
/// Same as restrict_scalars but with an explicit field (needed for empty vectors).
std::vector<Rat> restrict_scalars(std::span<const FElem> v, FieldSpec field);

/// 2x2 (or 1x1) rational matrix of multiplication by lambda, acting on the
/// restricted coordinates (a, b) of one field coordinate.
std::vector<Rat> multiplication_matrix(const FElem& lambda);

FElem dot(std::span<const FElem> u, std::span<const FElem> v);

}  // namespace patcoh
