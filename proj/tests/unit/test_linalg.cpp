#include <algorithm>
#include <set>

#include "doctest.h"
#include "support.hpp"

#include "patcoh/catalog.hpp"
#include "patcoh/linalg.hpp"

using namespace patcoh;

namespace {

IntMatrix im(std::vector<std::vector<Integer>> rows) { return IntMatrix::from_rows(rows); }
RatMatrix rm(std::vector<std::vector<Rat>> rows, std::size_t cols = 0) { return RatMatrix::from_rows(rows, cols); }
IntVector iv(std::initializer_list<long> xs) { return IntVector(xs.begin(), xs.end()); }

bool is_hnf(const IntMatrix& h) {
  std::size_t last = 0;
  bool first = true;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t p = 0;
    while (p < h.cols() && sgn(h(i, p)) == 0) ++p;
    if (p == h.cols()) return false;  // zero rows are dropped or trailing
    if (!first && p <= last) return false;
    if (sgn(h(i, p)) <= 0) return false;
    for (std::size_t k = 0; k < i; ++k)
      if (sgn(h(k, p)) < 0 || h(k, p) >= h(i, p)) return false;
    last = p;
    first = false;
  }
  return true;
}

IntMatrix nonzero_rows(const IntMatrix& m) {
  IntMatrix out(0, m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    if (std::any_of(r.begin(), r.end(), [](const Integer& x) { return sgn(x) != 0; })) out.append_row(r);
  }
  return out;
}

}  // namespace

TEST_CASE("rational rank") {
  CHECK(rat_rank(RatMatrix(3, 4)) == 0);
  CHECK(rat_rank(rm({{1, 2}, {2, 4}})) == 1);
  RatMatrix w(0, 6);
  for (const auto& g : catalog::icosahedral_star()) w.append_row(restrict_scalars(g));
  CHECK(rat_rank(w) == 6);
  CHECK(int_rank(im({{1, 2, 3}, {2, 4, 6}, {0, 0, 1}})) == 2);
}

TEST_CASE("determinant") {
  CHECK(determinant(im({{2, 4}, {1, 3}})) == 2);
  CHECK(determinant(im({{0, 1}, {1, 0}})) == -1);
  CHECK(determinant(im({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}})) == -3);
  CHECK(determinant(IntMatrix(0, 0)) == 1);
}

TEST_CASE("rref over the field") {
  const FieldSpec f = FieldSpec::quadratic(5);
  const FElem tau = catalog::tau(), sigma = catalog::sigma(), z = FElem::zero(f), one = FElem::one(f);
  CHECK(rref_over_field(FMatrix::from_rows({{tau, tau}})) == FMatrix::from_rows({{one, one}}));
  CHECK(rref_over_field(FMatrix::from_rows({{z, z}, {one, sigma}})) == FMatrix::from_rows({{one, sigma}}));
  CHECK(rref_over_field(FMatrix::from_rows({{one, tau}})) == rref_over_field(FMatrix::from_rows({{sigma, sigma * tau}})));
  CHECK(field_rank(FMatrix::from_rows({{one, tau}, {tau, tau * tau}})) == 1);
  const FMatrix ns = field_nullspace(FMatrix::from_rows({{one, tau}}), f);
  REQUIRE(ns.rows() == 1);
  CHECK(ns(0, 0) * one + ns(0, 1) * tau == z);
}

TEST_CASE("hnf examples") {
  const auto h = hnf(im({{2, 4}, {1, 3}}));
  CHECK(nonzero_rows(h.h) == im({{1, 1}, {0, 2}}));
  CHECK(h.u * im({{2, 4}, {1, 3}}) == h.h);
  CHECK(abs(determinant(h.u)) == 1);
  CHECK(hnf(identity_matrix(4)).h == identity_matrix(4));
}

TEST_CASE("hnf is canonical under unimodular left factors") {
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = test::uniform(1, 5), c = test::uniform(1, 5);
    const IntMatrix m = test::random_int_matrix(r, c);
    const IntMatrix p = test::random_unimodular(r);
    const auto a = hnf(m), b = hnf(p * m);
    CHECK(a.h == b.h);
    CHECK(a.u * m == a.h);
    CHECK(abs(determinant(a.u)) == 1);
    CHECK(is_hnf(nonzero_rows(a.h)));
    CHECK(nonzero_rows(a.h).rows() == int_rank(m));
  }
}

TEST_CASE("snf examples") {
  CHECK(snf(im({{2, 4}, {1, 3}})).d == im({{1, 0}, {0, 2}}));
  CHECK(snf(im({{6, 0}, {0, 4}})).d == im({{2, 0}, {0, 12}}));
  CHECK(snf(IntMatrix(2, 3)).d == IntMatrix(2, 3));
}

TEST_CASE("snf divisibility chain, transforms and determinant") {
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = test::uniform(1, 5), c = test::uniform(1, 5);
    const IntMatrix m = test::random_int_matrix(r, c, 9);
    const auto s = snf(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(abs(determinant(s.u)) == 1);
    CHECK(abs(determinant(s.v)) == 1);
    Integer prev = 1;
    bool zero_seen = false;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        if (i != j) {
          CHECK(sgn(s.d(i, j)) == 0);
          continue;
        }
        const Integer& x = s.d(i, i);
        CHECK(sgn(x) >= 0);
        if (sgn(x) == 0) {
          zero_seen = true;
          continue;
        }
        CHECK_FALSE(zero_seen);
        CHECK(mpz_divisible_p(x.get_mpz_t(), prev.get_mpz_t()) != 0);
        prev = x;
      }
    if (r == c) {
      Integer prod = 1;
      for (std::size_t i = 0; i < r; ++i) prod *= s.d(i, i);
      CHECK(prod == abs(determinant(m)));
    }
  }
}

TEST_CASE("integer kernel") {
  const auto k = integer_kernel(rm({{Rat(1, 2), Rat(-1, 3)}}));
  CHECK(k.basis() == im({{2, 3}}));
  CHECK(integer_kernel(RatMatrix(1, 3)) == IntLattice::full(3));
  CHECK(integer_kernel(rm({{1, 2}, {3, 4}})).rank() == 0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = test::uniform(1, 4), c = test::uniform(1, 6);
    RatMatrix a(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) a(i, j) = test::uniform(0, 2) == 0 ? Rat(0) : test::random_rat(5);
    const auto lat = integer_kernel(a);
    CHECK(lat.rank() == c - rat_rank(a));
    const RatMatrix prod = a * to_rational(lat.basis().transposed());
    CHECK(prod == RatMatrix(r, lat.rank()));
  }
}

TEST_CASE("mixed_solve examples") {
  {
    const auto s = mixed_solve(rm({{1}}), rm({{2}}), std::vector<Rat>{Rat(1, 2)});
    REQUIRE(s);
    CHECK(s->lattice == IntLattice::full(1));
  }
  {
    const auto s = mixed_solve(rm({{Rat(1, 2), Rat(-1, 3)}}), RatMatrix(1, 0), std::vector<Rat>{0});
    REQUIRE(s);
    CHECK(s->base == iv({0, 0}));
    CHECK(s->lattice.basis() == im({{2, 3}}));
  }
  CHECK_FALSE(mixed_solve(rm({{Rat(1, 2)}}), RatMatrix(1, 0), std::vector<Rat>{Rat(1, 3)}));
}

TEST_CASE("mixed_solve agrees with a brute-force box search") {
  // A x + B t = c has a rational t iff rank [B | c - A x] = rank B.
  const long box = 10;
  int instances = 0, nonempty = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t k = test::uniform(1, 2), s = test::uniform(0, 1), r = test::uniform(1, 3);
    RatMatrix a(r, k), b(r, s);
    std::vector<Rat> c(r);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < k; ++j) a(i, j) = Rat(test::uniform(-5, 5), test::uniform(1, 3));
      for (std::size_t j = 0; j < s; ++j) b(i, j) = test::uniform(-5, 5);
      c[i] = Rat(test::uniform(-5, 5), test::uniform(1, 3));
    }
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < k; ++j) a(i, j).canonicalize();
      c[i].canonicalize();
    }
    const auto sol = mixed_solve(a, b, c);
    const std::size_t rb = rat_rank(b);
    ++instances;
    bool any = false;
    std::vector<long> x(k, -box);
    for (bool done = false; !done;) {
      RatMatrix aug(r, s + 1);
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < s; ++j) aug(i, j) = b(i, j);
        Rat rhs = c[i];
        for (std::size_t j = 0; j < k; ++j) rhs -= a(i, j) * x[j];
        aug(i, s) = rhs;
      }
      const bool brute = rat_rank(aug) == rb;
      bool in_coset = false;
      if (sol) {
        IntVector diff(k);
        for (std::size_t j = 0; j < k; ++j) diff[j] = Integer(x[j]) - sol->base[j];
        in_coset = sol->lattice.contains(diff);
      }
      CHECK(brute == in_coset);
      any = any || brute;
      std::size_t j = 0;
      while (j < k && x[j] == box) x[j++] = -box;
      if (j == k) done = true;
      else ++x[j];
    }
    if (any) ++nonempty;
  }
  CHECK(instances >= 100);
  CHECK(nonempty > 10);
}

TEST_CASE("lattice index") {
  const auto z2 = IntLattice::full(2);
  CHECK(lattice_index(z2, IntLattice::from_generators(im({{2, 0}, {0, 3}}))) == Integer(6));
  CHECK(lattice_index(z2, z2) == Integer(1));
  CHECK_FALSE(lattice_index(z2, IntLattice::from_generators(im({{1, 0}}))).has_value());
  CHECK_THROWS_AS(lattice_index(IntLattice::from_generators(im({{2, 0}, {0, 2}})), z2), DomainError);
}

TEST_CASE("coset representatives") {
  const auto reps = coset_reps(IntLattice::full(2), IntLattice::from_generators(im({{2, 0}, {0, 3}})));
  CHECK(reps == std::vector<IntVector>{iv({0, 0}), iv({0, 1}), iv({0, 2}), iv({1, 0}), iv({1, 1}), iv({1, 2})});
  CHECK(coset_reps(IntLattice::full(3), IntLattice::full(3)) == std::vector<IntVector>{iv({0, 0, 0})});
  CHECK(coset_reps(IntLattice::full(1), IntLattice::from_generators(im({{5}}))) ==
        std::vector<IntVector>{iv({0}), iv({1}), iv({2}), iv({3}), iv({4})});
  CHECK_THROWS(coset_reps(IntLattice::full(2), IntLattice::from_generators(im({{1, 0}}))));
}

TEST_CASE("coset representative count equals the index") {
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = test::uniform(1, 3);
    IntMatrix sg = test::random_int_matrix(n, n, 3);
    if (sgn(determinant(sg)) == 0) continue;
    const auto s = IntLattice::from_generators(sg);
    IntMatrix t = test::random_int_matrix(n, n, 3);
    if (sgn(determinant(t)) == 0) continue;
    const auto h = IntLattice::from_generators(t * s.basis());
    const auto idx = lattice_index(s, h);
    REQUIRE(idx);
    CHECK(*idx == abs(determinant(h.basis())) / abs(determinant(s.basis())));
    const auto reps = coset_reps(s, h);
    CHECK(Integer(reps.size()) == *idx);
    std::set<IntVector> reduced;
    for (const auto& v : reps) {
      CHECK(s.contains(v));
      reduced.insert(h.reduce(v));
    }
    CHECK(reduced.size() == reps.size());
    CHECK(std::is_sorted(reps.begin(), reps.end(), [](const IntVector& a, const IntVector& b) { return lex_less(a, b); }));
  }
}

TEST_CASE("wedge span rank") {
  const auto e12 = IntLattice::from_generators(im({{1, 0, 0, 0}, {0, 1, 0, 0}}));
  const auto e34 = IntLattice::from_generators(im({{0, 0, 1, 0}, {0, 0, 0, 1}}));
  const auto e13 = IntLattice::from_generators(im({{1, 0, 0, 0}, {0, 0, 1, 0}}));
  std::vector<IntLattice> lats{e12, e34};
  CHECK(wedge_span_rank(lats, 2) == 2);
  lats.push_back(e13);
  CHECK(wedge_span_rank(lats, 2) == 3);
  CHECK(wedge_span_rank(lats, 0) == 1);
  CHECK(wedge_span_rank(std::vector<IntLattice>{}, 0) == 0);
  CHECK(wedge_span_rank(lats, 1) == 4);
  CHECK(wedge_span_rank(lats, 3) == 0);
  CHECK(wedge_span_rank(lats, 5) == 0);
}

TEST_CASE("wedge span rank does not depend on the chosen bases") {
  // Oracle: p x p minors of an arbitrary generating basis, ranked over Q.
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 5, p = test::uniform(1, 3);
    std::vector<IntLattice> lats;
    RatMatrix minors(0, 0);
    bool init = false;
    for (int l = 0; l < 3; ++l) {
      const std::size_t r = test::uniform(p, 4);
      IntMatrix g = test::random_int_matrix(r, n, 3);
      if (int_rank(g) < r) continue;
      lats.push_back(IntLattice::from_generators(g));
      const IntMatrix other = test::random_unimodular(r) * g;
      auto subsets = [](std::size_t total, std::size_t size) {
        std::vector<std::vector<std::size_t>> out;
        std::vector<bool> pick(total, false);
        std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
        do {
          std::vector<std::size_t> s;
          for (std::size_t i = 0; i < total; ++i)
            if (pick[i]) s.push_back(i);
          out.push_back(s);
        } while (std::prev_permutation(pick.begin(), pick.end()));
        std::sort(out.begin(), out.end());
        return out;
      };
      const auto col_sets = subsets(n, p);
      if (!init) {
        minors = RatMatrix(0, col_sets.size());
        init = true;
      }
      for (const auto& rs : subsets(r, p)) {
        std::vector<Rat> row;
        for (const auto& cs : col_sets) {
          IntMatrix sub(p, p);
          for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j) sub(i, j) = other(rs[i], cs[j]);
          row.push_back(determinant(sub));
        }
        minors.append_row(row);
      }
    }
    if (lats.empty()) continue;
    CHECK(wedge_span_rank(lats, p) == rat_rank(minors));
  }
}

TEST_CASE("lattice membership and reduction") {
  const auto l = IntLattice::from_generators(im({{2, 4}, {1, 3}, {3, 7}}));
  CHECK(l.rank() == 2);
  CHECK(l.contains(iv({1, 3})));
  CHECK_FALSE(l.contains(iv({0, 1})));
  CHECK(l.reduce(iv({3, 8})) == l.reduce(iv({0, 1})));
  CHECK(l.contains(IntLattice::from_generators(im({{2, 6}}))));
}
