#include "patcoh/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace patcoh {

namespace {

// new_p = s*row_p + t*row_i ; new_i = y*row_p + x*row_i  (s*x - t*y = 1)
void combine_rows(IntMatrix& m, std::size_t p, std::size_t i, const Integer& s, const Integer& t,
                  const Integer& y, const Integer& x) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Integer np = s * m(p, j) + t * m(i, j);
    Integer ni = y * m(p, j) + x * m(i, j);
    m(p, j) = std::move(np);
    m(i, j) = std::move(ni);
  }
}

void combine_cols(IntMatrix& m, std::size_t p, std::size_t j, const Integer& s, const Integer& t,
                  const Integer& y, const Integer& x) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer np = s * m(i, p) + t * m(i, j);
    Integer nj = y * m(i, p) + x * m(i, j);
    m(i, p) = std::move(np);
    m(i, j) = std::move(nj);
  }
}

void negate_row(IntMatrix& m, std::size_t i) {
  for (auto& e : m.row(i)) e = -e;
}

// row_k -= q * row_p
void sub_row(IntMatrix& m, std::size_t k, std::size_t p, const Integer& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(k, j) -= q * m(p, j);
}

struct Bezout {
  Integer g, s, t, a_over_g, b_over_g;
};

Bezout bezout(const Integer& a, const Integer& b) {
  Bezout r;
  if (sgn(a) != 0 && mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
    // plain elimination keeps the pivot in place
    r.g = a;
    r.s = 1;
    r.t = 0;
    r.a_over_g = 1;
    mpz_divexact(r.b_over_g.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
    return r;
  }
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_divexact(r.a_over_g.get_mpz_t(), a.get_mpz_t(), r.g.get_mpz_t());
  mpz_divexact(r.b_over_g.get_mpz_t(), b.get_mpz_t(), r.g.get_mpz_t());
  return r;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer row_denominator_lcm(std::span<const Rat> row) {
  Integer l = 1;
  for (const Rat& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

IntMatrix scale_to_integer_rows(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = row_denominator_lcm(m.row(i));
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(i, j) = m(i, j).get_num() * (l / m(i, j).get_den());
    }
  }
  return out;
}

std::size_t pivot_column(std::span<const Integer> row) {
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (sgn(row[j]) != 0) return j;
  }
  return row.size();
}

}  // namespace

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, n, Integer(0));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols() != y.rows()) throw DomainError("matrix product shape mismatch");
  IntMatrix out(x.rows(), y.cols(), Integer(0));
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t k = 0; k < x.cols(); ++k) {
      if (sgn(x(i, k)) == 0) continue;
      for (std::size_t j = 0; j < y.cols(); ++j) out(i, j) += x(i, k) * y(k, j);
    }
  return out;
}

RatMatrix operator*(const RatMatrix& x, const RatMatrix& y) {
  if (x.cols() != y.rows()) throw DomainError("matrix product shape mismatch");
  RatMatrix out(x.rows(), y.cols(), Rat(0));
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t k = 0; k < x.cols(); ++k) {
      if (sgn(x(i, k)) == 0) continue;
      for (std::size_t j = 0; j < y.cols(); ++j) out(i, j) += x(i, k) * y(k, j);
    }
  return out;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rat(m(i, j));
  return out;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(a(p, k)) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t int_rank(const IntMatrix& m) {
  IntMatrix a = m;
  Integer prev = 1;
  std::size_t pr = 0;
  for (std::size_t j = 0; j < a.cols() && pr < a.rows(); ++j) {
    std::size_t p = pr;
    while (p < a.rows() && sgn(a(p, j)) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(pr, p);
    for (std::size_t i = pr + 1; i < a.rows(); ++i) {
      for (std::size_t k = j + 1; k < a.cols(); ++k) {
        Integer v = a(pr, j) * a(i, k) - a(i, j) * a(pr, k);
        mpz_divexact(a(i, k).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, j) = 0;
    }
    prev = a(pr, j);
    ++pr;
  }
  return pr;
}

std::size_t rat_rank(const RatMatrix& m) { return int_rank(scale_to_integer_rows(m)); }

FMatrix rref_over_field(const FMatrix& m) {
  FMatrix a = m;
  std::size_t pr = 0;
  for (std::size_t j = 0; j < a.cols() && pr < a.rows(); ++j) {
    std::size_t p = pr;
    while (p < a.rows() && a(p, j).is_zero()) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(pr, p);
    const FElem inv = a(pr, j).inverse();
    for (auto& e : a.row(pr)) e *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == pr || a(i, j).is_zero()) continue;
      const FElem f = a(i, j);
      for (std::size_t k = j; k < a.cols(); ++k) a(i, k) -= f * a(pr, k);
    }
    ++pr;
  }
  FMatrix out(0, a.cols());
  for (std::size_t i = 0; i < pr; ++i) out.append_row(a.row(i));
  return out;
}

std::size_t field_rank(const FMatrix& m) { return rref_over_field(m).rows(); }

FMatrix field_nullspace(const FMatrix& m, FieldSpec field) {
  const FMatrix r = rref_over_field(m);
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    std::size_t j = 0;
    while (r(i, j).is_zero()) ++j;
    pivots.push_back(j);
  }
  FMatrix basis(0, m.cols());
  std::size_t next_pivot = 0;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (next_pivot < pivots.size() && pivots[next_pivot] == f) {
      ++next_pivot;
      continue;
    }
    FVector v(m.cols(), FElem::zero(field));
    v[f] = FElem::one(field);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, f);
    basis.append_row(v);
  }
  return rref_over_field(basis);
}

RatMatrix rat_nullspace(const RatMatrix& m) {
  RatMatrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t pr = 0;
  for (std::size_t j = 0; j < a.cols() && pr < a.rows(); ++j) {
    std::size_t p = pr;
    while (p < a.rows() && sgn(a(p, j)) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(pr, p);
    const Rat inv = 1 / a(pr, j);
    for (auto& e : a.row(pr)) e *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == pr || sgn(a(i, j)) == 0) continue;
      const Rat f = a(i, j);
      for (std::size_t k = j; k < a.cols(); ++k) a(i, k) -= f * a(pr, k);
    }
    pivots.push_back(j);
    ++pr;
  }
  RatMatrix basis(0, a.cols());
  std::size_t next_pivot = 0;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (next_pivot < pivots.size() && pivots[next_pivot] == f) {
      ++next_pivot;
      continue;
    }
    RatVector v(a.cols(), Rat(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a(i, f);
    basis.append_row(v);
  }
  return basis;
}

HermiteForm hnf(const IntMatrix& m) {
  IntMatrix a = m;
  IntMatrix u = identity_matrix(m.rows());
  std::size_t pr = 0;
  for (std::size_t j = 0; j < a.cols() && pr < a.rows(); ++j) {
    std::size_t p = pr;
    while (p < a.rows() && sgn(a(p, j)) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(pr, p);
    u.swap_rows(pr, p);
    for (std::size_t i = pr + 1; i < a.rows(); ++i) {
      if (sgn(a(i, j)) == 0) continue;
      Bezout b = bezout(a(pr, j), a(i, j));
      Integer ny = -b.b_over_g;
      combine_rows(a, pr, i, b.s, b.t, ny, b.a_over_g);
      combine_rows(u, pr, i, b.s, b.t, ny, b.a_over_g);
    }
    if (sgn(a(pr, j)) < 0) {
      negate_row(a, pr);
      negate_row(u, pr);
    }
    for (std::size_t k = 0; k < pr; ++k) {
      Integer q = floor_div(a(k, j), a(pr, j));
      if (sgn(q) == 0) continue;
      sub_row(a, k, pr, q);
      sub_row(u, k, pr, q);
    }
    ++pr;
  }
  return {std::move(a), std::move(u)};
}

SmithForm snf(const IntMatrix& m) {
  IntMatrix d = m;
  IntMatrix u = identity_matrix(m.rows());
  IntMatrix v = identity_matrix(m.cols());
  const std::size_t r = d.rows(), c = d.cols();
  for (std::size_t t = 0; t < std::min(r, c); ++t) {
    // smallest nonzero entry of the trailing block becomes the pivot
    std::size_t pi = r, pj = c;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < c; ++j) {
        if (sgn(d(i, j)) == 0) continue;
        if (pi == r || mpz_cmpabs(d(i, j).get_mpz_t(), d(pi, pj).get_mpz_t()) < 0) {
          pi = i;
          pj = j;
        }
      }
    if (pi == r) break;
    d.swap_rows(t, pi);
    u.swap_rows(t, pi);
    d.swap_cols(t, pj);
    v.swap_cols(t, pj);

    for (;;) {
      for (std::size_t i = t + 1; i < r; ++i) {
        if (sgn(d(i, t)) == 0) continue;
        Bezout b = bezout(d(t, t), d(i, t));
        Integer ny = -b.b_over_g;
        combine_rows(d, t, i, b.s, b.t, ny, b.a_over_g);
        combine_rows(u, t, i, b.s, b.t, ny, b.a_over_g);
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (sgn(d(t, j)) == 0) continue;
        Bezout b = bezout(d(t, t), d(t, j));
        Integer ny = -b.b_over_g;
        combine_cols(d, t, j, b.s, b.t, ny, b.a_over_g);
        combine_cols(v, t, j, b.s, b.t, ny, b.a_over_g);
      }
      bool column_clear = true;
      for (std::size_t i = t + 1; i < r; ++i) column_clear = column_clear && sgn(d(i, t)) == 0;
      if (!column_clear) continue;

      std::size_t bad = r;
      for (std::size_t i = t + 1; i < r && bad == r; ++i)
        for (std::size_t j = t + 1; j < c; ++j) {
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
        }
      if (bad == r) break;
      sub_row(d, t, bad, Integer(-1));
      sub_row(u, t, bad, Integer(-1));
    }
    if (sgn(d(t, t)) < 0) {
      negate_row(d, t);
      negate_row(u, t);
    }
  }
  return {std::move(d), std::move(u), std::move(v)};
}

IntLattice IntLattice::full(std::size_t ambient) {
  IntLattice l;
  l.ambient_ = ambient;
  l.basis_ = identity_matrix(ambient);
  return l;
}

IntLattice IntLattice::from_generators(const IntMatrix& rows) {
  IntLattice l;
  l.ambient_ = rows.cols();
  HermiteForm h = hnf(rows);
  l.basis_ = IntMatrix(0, rows.cols());
  for (std::size_t i = 0; i < h.h.rows(); ++i) {
    if (pivot_column(h.h.row(i)) == rows.cols()) break;
    l.basis_.append_row(h.h.row(i));
  }
  return l;
}

std::optional<IntVector> IntLattice::coordinates(std::span<const Integer> v) const {
  if (v.size() != ambient_) throw DomainError("vector length does not match lattice ambient rank");
  IntVector w(v.begin(), v.end());
  IntVector coords(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    const std::size_t p = pivot_column(basis_.row(i));
    if (!mpz_divisible_p(w[p].get_mpz_t(), basis_(i, p).get_mpz_t())) return std::nullopt;
    mpz_divexact(coords[i].get_mpz_t(), w[p].get_mpz_t(), basis_(i, p).get_mpz_t());
    if (sgn(coords[i]) == 0) continue;
    for (std::size_t j = p; j < ambient_; ++j) w[j] -= coords[i] * basis_(i, j);
  }
  for (const Integer& x : w) {
    if (sgn(x) != 0) return std::nullopt;
  }
  return coords;
}

bool IntLattice::contains(const IntLattice& sub) const {
  if (sub.ambient_ != ambient_) return false;
  for (std::size_t i = 0; i < sub.rank(); ++i) {
    if (!contains(sub.basis_.row(i))) return false;
  }
  return true;
}

IntVector IntLattice::reduce(IntVector v) const {
  if (v.size() != ambient_) throw DomainError("vector length does not match lattice ambient rank");
  for (std::size_t i = 0; i < rank(); ++i) {
    const std::size_t p = pivot_column(basis_.row(i));
    Integer q = floor_div(v[p], basis_(i, p));
    if (sgn(q) == 0) continue;
    for (std::size_t j = p; j < ambient_; ++j) v[j] -= q * basis_(i, j);
  }
  return v;
}

IntLattice integer_kernel(const RatMatrix& a) {
  const IntMatrix m = scale_to_integer_rows(a);
  const HermiteForm h = hnf(m.transposed());
  IntMatrix kernel(0, a.cols());
  for (std::size_t i = 0; i < h.h.rows(); ++i) {
    if (pivot_column(h.h.row(i)) == h.h.cols()) kernel.append_row(h.u.row(i));
  }
  return IntLattice::from_generators(kernel);
}

std::optional<Coset> mixed_solve(const RatMatrix& a, const RatMatrix& b, std::span<const Rat> c) {
  const std::size_t r = a.rows(), k = a.cols();
  if (b.rows() != r || c.size() != r) throw DomainError("mixed_solve: inconsistent row counts");

  // Rows of p annihilate the column space of b, so t drops out of p(a x - c) = 0.
  RatMatrix p;
  if (b.cols() == 0) {
    p = to_rational(identity_matrix(r));
  } else {
    p = rat_nullspace(b.transposed());
  }
  const RatMatrix pa = p * a;
  RatMatrix cm(r, 1);
  for (std::size_t i = 0; i < r; ++i) cm(i, 0) = c[i];
  const RatMatrix pc = p * cm;

  const std::size_t rows = pa.rows();
  IntMatrix n(rows, k);
  IntVector f(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    Integer l = row_denominator_lcm(pa.row(i));
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), pc(i, 0).get_den_mpz_t());
    for (std::size_t j = 0; j < k; ++j) n(i, j) = pa(i, j).get_num() * (l / pa(i, j).get_den());
    f[i] = pc(i, 0).get_num() * (l / pc(i, 0).get_den());
  }

  const SmithForm s = snf(n);
  IntVector h(rows, Integer(0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < rows; ++j) h[i] += s.u(i, j) * f[j];

  std::size_t rank = 0;
  while (rank < std::min(rows, k) && sgn(s.d(rank, rank)) != 0) ++rank;

  IntVector y(k, Integer(0));
  for (std::size_t i = 0; i < rows; ++i) {
    if (i < rank) {
      if (!mpz_divisible_p(h[i].get_mpz_t(), s.d(i, i).get_mpz_t())) return std::nullopt;
      mpz_divexact(y[i].get_mpz_t(), h[i].get_mpz_t(), s.d(i, i).get_mpz_t());
    } else if (sgn(h[i]) != 0) {
      return std::nullopt;
    }
  }
  IntVector x(k, Integer(0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < rank; ++j) x[i] += s.v(i, j) * y[j];

  IntMatrix gens(0, k);
  for (std::size_t j = rank; j < k; ++j) {
    IntVector col(k);
    for (std::size_t i = 0; i < k; ++i) col[i] = s.v(i, j);
    gens.append_row(col);
  }
  Coset out;
  out.lattice = IntLattice::from_generators(gens);
  out.base = out.lattice.reduce(std::move(x));
  return out;
}

std::optional<Integer> lattice_index(const IntLattice& s, const IntLattice& h) {
  if (!s.contains(h)) throw DomainError("lattice_index: subgroup is not contained in the lattice");
  if (h.rank() < s.rank()) return std::nullopt;
  IntMatrix coords(0, s.rank());
  for (std::size_t i = 0; i < h.rank(); ++i) coords.append_row(*s.coordinates(h.basis().row(i)));
  return Integer(abs(determinant(coords)));
}

std::vector<IntVector> coset_reps(const IntLattice& s, const IntLattice& h) {
  if (!lattice_index(s, h)) throw DomainError("coset_reps: infinite index");
  const std::size_t r = s.rank();
  IntMatrix coords(0, r);
  for (std::size_t i = 0; i < h.rank(); ++i) coords.append_row(*s.coordinates(h.basis().row(i)));

  // x in L(coords) iff x*v in L(d); residues rho give cosets rho * v^{-1}.
  const SmithForm sm = snf(coords);
  const IntMatrix v_inv = hnf(sm.v).u;

  std::vector<IntVector> reps;
  IntVector rho(r, Integer(0));
  for (bool done = false; !done;) {
    IntVector x(r, Integer(0));
    for (std::size_t i = 0; i < r; ++i) {
      if (sgn(rho[i]) == 0) continue;
      for (std::size_t j = 0; j < r; ++j) x[j] += rho[i] * v_inv(i, j);
    }
    IntVector amb(s.ambient_rank(), Integer(0));
    for (std::size_t i = 0; i < r; ++i) {
      if (sgn(x[i]) == 0) continue;
      for (std::size_t j = 0; j < s.ambient_rank(); ++j) amb[j] += x[i] * s.basis()(i, j);
    }
    reps.push_back(h.reduce(std::move(amb)));

    std::size_t pos = r;
    for (;;) {
      if (pos == 0) {
        done = true;
        break;
      }
      --pos;
      rho[pos] += 1;
      if (rho[pos] < sm.d(pos, pos)) break;
      rho[pos] = 0;
    }
  }
  std::sort(reps.begin(), reps.end(),
            [](const IntVector& x, const IntVector& y) { return lex_less(x, y); });
  return reps;
}

namespace {

void for_each_subset(std::size_t n, std::size_t p, auto&& fn) {
  std::vector<std::size_t> idx(p);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (p > n) return;
  for (;;) {
    fn(std::span<const std::size_t>(idx));
    std::size_t i = p;
    while (i > 0 && idx[i - 1] == n - p + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < p; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::size_t wedge_span_rank(std::span<const IntLattice> lats, std::size_t p) {
  if (lats.empty()) return 0;
  const std::size_t n = lats.front().ambient_rank();
  if (p == 0) return 1;
  if (p > n) return 0;

  std::vector<std::vector<std::size_t>> col_subsets;
  for_each_subset(n, p, [&](std::span<const std::size_t> s) { col_subsets.emplace_back(s.begin(), s.end()); });

  IntMatrix wedges(0, col_subsets.size());
  for (const IntLattice& lat : lats) {
    if (lat.ambient_rank() != n) throw DomainError("wedge_span_rank: lattices in different ambient spaces");
    if (lat.rank() < p) continue;
    for_each_subset(lat.rank(), p, [&](std::span<const std::size_t> rows) {
      IntVector w;
      w.reserve(col_subsets.size());
      IntMatrix minor(p, p);
      for (const auto& cols : col_subsets) {
        for (std::size_t a = 0; a < p; ++a)
          for (std::size_t b = 0; b < p; ++b) minor(a, b) = lat.basis()(rows[a], cols[b]);
        w.push_back(determinant(minor));
      }
      wedges.append_row(w);
    });
  }
  return int_rank(wedges);
}

bool lex_less(std::span<const Integer> x, std::span<const Integer> y) {
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                      [](const Integer& a, const Integer& b) { return cmp(a, b) < 0; });
}

}  // namespace patcoh
