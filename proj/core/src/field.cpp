#include "patcoh/field.hpp"

#include <cctype>

#include "patcoh/error.hpp"

namespace patcoh {

namespace {

bool valid_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!valid_integer_text(s)) throw DomainError("malformed integer '" + std::string(s) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rat parse_rat(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  auto den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
    throw DomainError("malformed rational '" + std::string(text) + "'");
  }
  Integer den = parse_integer(den_text);
  if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

bool is_squarefree(long n) {
  if (n < 1) return false;
  for (long p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::quadratic(long d) {
  if (d < 2 || !is_squarefree(d)) {
    throw DomainError("Q(sqrt " + std::to_string(d) + ") needs a squarefree radicand >= 2");
  }
  FieldSpec f;
  f.radicand_ = d;
  return f;
}

std::string FieldSpec::name() const {
  return is_rational() ? "Q" : "Q(sqrt " + std::to_string(radicand_) + ")";
}

FElem::FElem(FieldSpec field, Rat a, Rat b) : field_(field), a_(std::move(a)), b_(std::move(b)) {
  a_.canonicalize();
  b_.canonicalize();
  if (field_.is_rational() && sgn(b_) != 0) {
    throw FieldMismatch("irrational part on an element of Q");
  }
}

void FElem::check_field(const FElem& y) const {
  if (field_ != y.field_) {
    throw FieldMismatch("operands in " + field_.name() + " and " + y.field_.name());
  }
}

Rat FElem::norm() const { return Rat(a_ * a_ - field_.radicand() * b_ * b_); }

FElem FElem::conj() const {
  FElem r = *this;
  r.b_ = -r.b_;
  return r;
}

FElem FElem::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  Rat n = norm();
  FElem r(field_);
  r.a_ = a_ / n;
  r.b_ = -b_ / n;
  return r;
}

FElem& FElem::operator+=(const FElem& y) {
  check_field(y);
  a_ += y.a_;
  b_ += y.b_;
  return *this;
}

FElem& FElem::operator-=(const FElem& y) {
  check_field(y);
  a_ -= y.a_;
  b_ -= y.b_;
  return *this;
}

FElem& FElem::operator*=(const FElem& y) {
  check_field(y);
  if (field_.is_rational()) {
    a_ *= y.a_;
    return *this;
  }
  Rat a = a_ * y.a_ + field_.radicand() * b_ * y.b_;
  Rat b = a_ * y.b_ + b_ * y.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

FElem& FElem::operator/=(const FElem& y) {
  check_field(y);
  return *this *= y.inverse();
}

FElem FElem::operator-() const {
  FElem r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

std::strong_ordering operator<=>(const FElem& x, const FElem& y) {
  if (x.field_.radicand() != y.field_.radicand()) {
    return x.field_.radicand() <=> y.field_.radicand();
  }
  if (int c = cmp(x.a_, y.a_); c != 0) return c <=> 0;
  return cmp(x.b_, y.b_) <=> 0;
}

std::string FElem::to_string() const {
  if (field_.is_rational()) return patcoh::to_string(a_);
  return "(" + patcoh::to_string(a_) + ", " + patcoh::to_string(b_) + ")";
}

FElem fe_arith(ArithOp op, const FElem& x, const FElem& y) {
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Div: return x / y;
  }
  throw DomainError("unknown arithmetic operation");
}

std::vector<Rat> restrict_scalars(std::span<const FElem> v, FieldSpec field) {
  std::vector<Rat> out;
  out.reserve(v.size() * field.degree());
  for (const FElem& x : v) {
    if (x.field() != field) throw FieldMismatch("vector entry outside " + field.name());
    out.push_back(x.a());
    if (!field.is_rational()) out.push_back(x.b());
  }
  return out;
}

std::vector<Rat> restrict_scalars(std::span<const FElem> v) {
  if (v.empty()) return {};
  return restrict_scalars(v, v.front().field());
}

std::vector<Rat> multiplication_matrix(const FElem& lambda) {
  // (a, b) -> lambda * (a + b sqrt D), columns act on (a, b).
  if (lambda.field().is_rational()) return {lambda.a()};
  const Rat d(lambda.field().radicand());
  return {lambda.a(), d * lambda.b(), lambda.b(), lambda.a()};
}

FElem dot(std::span<const FElem> u, std::span<const FElem> v) {
  if (u.size() != v.size()) throw DomainError("dot product of vectors with different lengths");
  if (u.empty()) return FElem();
  FElem s = FElem::zero(u.front().field());
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

}  // namespace patcoh
