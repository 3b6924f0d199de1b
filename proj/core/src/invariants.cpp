#include "patcoh/invariants.hpp"

#include <map>

namespace patcoh {

std::int64_t binomial(std::int64_t a, std::int64_t b) {
  if (b < 0 || a < 0 || b > a) return 0;
  b = std::min(b, a - b);
  std::int64_t c = 1;
  for (std::int64_t i = 1; i <= b; ++i) c = c * (a - b + i) / i;
  return c;
}

std::size_t compute_nu(const ProjectionData& data, const Arrangement& arrangement) {
  const std::size_t n = data.rank(), m = data.dim;
  if (m == 0 || n % m != 0) {
    throw ConsistencyError("finite arrangement with dim V not dividing rank Gamma");
  }
  const std::size_t nu = n / m;
  for (const auto& level : arrangement.levels) {
    for (const SingularClass& c : level) {
      if (c.stabilizer.rank() != nu * c.dim) {
        throw ConsistencyError("stabilizer of a " + std::to_string(c.dim) + "-dimensional class has rank " +
                               std::to_string(c.stabilizer.rank()) + ", expected " + std::to_string(nu * c.dim));
      }
    }
  }
  return nu;
}

std::int64_t euler_characteristic(const Arrangement& arrangement) {
  if (!arrangement.has_relative() && arrangement.levels.size() > 1) {
    throw DomainError("euler_characteristic needs the relative arrangements");
  }
  // chain_sum[l][id] = sum over chains ending at the class of (-1)^length
  std::vector<std::vector<std::int64_t>> chain_sum(arrangement.levels.size());
  chain_sum[0].assign(arrangement.levels[0].size(), -1);
  for (std::size_t l = 1; l < arrangement.levels.size(); ++l) {
    for (const RelativeArrangement& rel : arrangement.relative[l]) {
      std::int64_t below = 0;
      for (std::size_t k = 0; k < rel.levels.size(); ++k) {
        for (const RelativeClass& rc : rel.levels[k]) below += chain_sum[k][rc.global_id];
      }
      chain_sum[l].push_back(-below);
    }
  }
  std::int64_t total = 0;
  for (const auto& level : chain_sum)
    for (std::int64_t v : level) total += v;
  return (arrangement.levels.size() % 2 == 0) ? total : -total;
}

WedgeQuantities wedge_quantities(const Arrangement& arrangement) {
  const std::size_t m = arrangement.data.dim;
  const std::size_t d = arrangement.data.pattern_dim();
  WedgeQuantities w;
  auto stabs = [&](std::size_t level) {
    std::vector<IntLattice> out;
    for (const SingularClass& c : arrangement.levels[level]) out.push_back(c.stabilizer);
    return out;
  };
  if (m == 2) {
    const auto lines = stabs(1);
    for (std::size_t p = 0; p <= d + 1; ++p) {
      w.r.push_back(static_cast<std::int64_t>(wedge_span_rank(lines, p + 1)));
    }
  } else if (m == 3) {
    if (!arrangement.has_relative()) throw DomainError("wedge_quantities needs the relative arrangements");
    const auto planes = stabs(2);
    const auto lines = stabs(1);
    std::vector<std::vector<IntLattice>> lines_in_plane;
    std::int64_t sum_l1 = 0;
    for (const RelativeArrangement& rel : arrangement.relative[2]) {
      std::vector<IntLattice> ls;
      for (const RelativeClass& rc : rel.levels[1]) ls.push_back(rc.cls.stabilizer);
      sum_l1 += static_cast<std::int64_t>(rel.count(1));
      lines_in_plane.push_back(std::move(ls));
    }
    w.tilde_l1 = sum_l1 - static_cast<std::int64_t>(arrangement.count(1));
    for (std::size_t p = 0; p <= d + 1; ++p) {
      std::int64_t v = static_cast<std::int64_t>(wedge_span_rank(planes, p + 2)) -
                       static_cast<std::int64_t>(wedge_span_rank(lines, p + 1));
      for (const auto& ls : lines_in_plane) v += static_cast<std::int64_t>(wedge_span_rank(ls, p + 1));
      w.R.push_back(v);
    }
  }
  return w;
}

std::vector<std::int64_t> rank_formulas(const FormulaInputs& in) {
  const auto nu = static_cast<std::int64_t>(in.nu);
  const std::int64_t d = nu * static_cast<std::int64_t>(in.m) - static_cast<std::int64_t>(in.m);
  auto L = [&](std::size_t l) { return static_cast<std::int64_t>(in.L.at(l)); };
  std::vector<std::int64_t> D(static_cast<std::size_t>(d + 1));
  switch (in.m) {
    case 1:
      D[0] = (nu - 1) + in.e;
      for (std::int64_t p = 1; p <= d; ++p) D[p] = binomial(nu, p + 1);
      break;
    case 2: {
      auto r = [&](std::int64_t p) { return in.r.at(static_cast<std::size_t>(p)); };
      D[0] = binomial(2 * nu, 2) - 2 * nu + 1 + L(1) * (nu - 1) + in.e - r(1);
      for (std::int64_t p = 1; p <= d; ++p) {
        D[p] = binomial(2 * nu, p + 2) + L(1) * binomial(nu, p + 1) - r(p + 1) - r(p);
      }
      break;
    }
    case 3: {
      auto R = [&](std::int64_t p) { return in.R.at(static_cast<std::size_t>(p)); };
      std::int64_t d0 = 0;
      for (std::int64_t j = 0; j <= 3; ++j) d0 += (j % 2 ? -1 : 1) * binomial(3 * nu, 3 - j);
      for (std::int64_t j = 0; j <= 2; ++j) d0 += (j % 2 ? -1 : 1) * L(2) * binomial(2 * nu, 2 - j);
      for (std::int64_t j = 0; j <= 1; ++j) d0 += (j % 2 ? -1 : 1) * in.tilde_l1 * binomial(nu, 1 - j);
      D[0] = d0 + in.e - R(1);
      for (std::int64_t p = 1; p <= d; ++p) {
        D[p] = binomial(3 * nu, p + 3) + L(2) * binomial(2 * nu, p + 2) + in.tilde_l1 * binomial(nu, p + 1) - R(p) -
               R(p + 1);
      }
      break;
    }
    default:
      throw DomainError("rank formulas exist for codimension 1, 2 and 3 only");
  }
  return D;
}

std::pair<std::int64_t, std::int64_t> k_ranks(std::span<const std::int64_t> h, std::size_t d) {
  // K_i(C(X) x Z^d) = K_{i-d}(C(hull)) = sum_j H^{2j+i-d}
  std::int64_t k[2] = {0, 0};
  for (std::size_t q = 0; q < h.size(); ++q) k[(q + d) % 2] += h[q];
  return {k[0], k[1]};
}

std::string_view to_string(ReportStatus s) {
  switch (s) {
    case ReportStatus::Finite: return "finite";
    case ReportStatus::Infinite: return "infinite";
    case ReportStatus::UnsupportedCodimension: return "unsupported_codimension";
  }
  return "unknown";
}

namespace {

InvariantReport header_of(const ProjectionData& data) {
  InvariantReport rep;
  rep.name = data.name;
  rep.field = data.field;
  rep.m = data.dim;
  rep.n = data.rank();
  rep.d = data.pattern_dim();
  return rep;
}

}  // namespace

InvariantReport invariants_of(const Arrangement& arrangement) {
  const ProjectionData& data = arrangement.data;
  InvariantReport rep = header_of(data);
  for (std::size_t l = 0; l < arrangement.levels.size(); ++l) rep.L.push_back(arrangement.count(l));

  const std::size_t nu = compute_nu(data, arrangement);
  rep.nu = nu;
  rep.e = euler_characteristic(arrangement);

  if (rep.m > 3) {
    rep.status = ReportStatus::UnsupportedCodimension;
    rep.diagnostics.push_back("no closed rank formulas above codimension 3; L, nu and e are still reported");
    rep.arrangement = arrangement;
    throw UnsupportedCodimension(std::move(rep));
  }

  const WedgeQuantities w = wedge_quantities(arrangement);
  rep.r = w.r;
  rep.R = w.R;
  rep.tilde_l1 = w.tilde_l1;

  // Wedge powers above every stabilizer rank vanish; check the computed values agree.
  const std::size_t line_rank = nu, plane_rank = 2 * nu;
  for (std::size_t p = 0; p < rep.R.size(); ++p) {
    if (p + 2 > plane_rank && p + 1 > line_rank && rep.R[p] != 0) throw ConsistencyError("R_p nonzero beyond the stabilizer ranks");
  }
  for (std::size_t p = 0; p < rep.r.size(); ++p) {
    if (p + 1 > line_rank && rep.r[p] != 0) throw ConsistencyError("r_p nonzero beyond the stabilizer ranks");
  }

  FormulaInputs in;
  in.m = rep.m;
  in.nu = nu;
  in.L = rep.L;
  in.tilde_l1 = w.tilde_l1.value_or(0);
  in.e = *rep.e;
  in.r = w.r;
  in.R = w.R;
  rep.D = rank_formulas(in);

  std::int64_t alternating = 0;
  for (std::size_t p = 0; p < rep.D.size(); ++p) {
    if (rep.D[p] < 0) throw ConsistencyError("negative rank D_" + std::to_string(p));
    alternating += (p % 2 ? -1 : 1) * rep.D[p];
  }
  if (alternating != *rep.e) {
    throw ConsistencyError("Euler identity failed: alternating sum of ranks " + std::to_string(alternating) +
                           " but chain count " + std::to_string(*rep.e));
  }
  rep.H.assign(rep.D.rbegin(), rep.D.rend());
  rep.K = k_ranks(rep.H, rep.d);
  rep.arrangement = arrangement;
  return rep;
}

InvariantReport infinite_report(const ProjectionData& data, const InfiniteL0& witness) {
  InvariantReport rep = header_of(data);
  rep.status = ReportStatus::Infinite;
  rep.finite = false;
  rep.infinite = witness;
  rep.diagnostics.push_back("L_0 is infinite: H^" + std::to_string(rep.d) +
                            "(Z^d, C(X,Z)) is infinitely generated");
  rep.diagnostics.push_back("classification subgroup of rank " + std::to_string(witness.deficient_subgroup_rank) +
                            " < " + std::to_string(witness.group_rank) + " for " +
                            std::to_string(witness.witness_level) + "-dimensional intersections");
  return rep;
}

InvariantReport cohomology_ranks(const ProjectionData& data, const EnumerateOptions& options) {
  const ValidationReport v = validate(data);
  if (!v.ok) throw DomainError("projection data failed validation");
  EnumerateOptions opts = options;
  opts.with_relative = true;
  auto res = enumerate_arrangement(data, opts);
  if (auto* inf = std::get_if<InfiniteL0>(&res)) return infinite_report(data, *inf);
  return invariants_of(std::get<Arrangement>(res));
}

}  // namespace patcoh
