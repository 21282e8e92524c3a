#include "zappatic/invariants.hpp"

#include <string>

namespace zappatic {

namespace {

[[noreturn]] void range_fail(const std::string& what) { throw RangeError(what); }

}  // namespace

long binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  long out = 1;
  for (long i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

InvariantReport invariants_of(const ZappaticReport& report, const DualGraph& graph) {
  if (!report.is_zappatic) throw GeometryError("invariants require a Zappatic arrangement");
  InvariantReport inv;
  inv.v = graph.num_vertices;
  inv.e = static_cast<int>(graph.edges.size());
  inv.r_counts = report.r_counts;
  inv.s_counts = report.s_counts;
  inv.f_counts = report.f_counts;
  inv.g = inv.e - inv.v + 1;

  long sum_f = 0, sum_2nf = 0;
  for (const auto& [n, c] : inv.f_counts) {
    sum_f += c;
    sum_2nf += 2L * n * c;
  }
  inv.chi = inv.v - inv.e + static_cast<int>(sum_f);

  const HomologyReport h = homology(graph);
  inv.p_omega = h.h2;
  if (h.euler != inv.chi) throw std::logic_error("Euler characteristic disagrees with the counting formula");

  long k_min = 0, k_max = 0;
  for (const auto& [m, c] : inv.r_counts) {
    if (m < 4) continue;
    k_min += (m - 2L) * c;
    k_max += (2L * m - 5) * c;
  }
  for (const auto& [m, c] : inv.s_counts) {
    if (m < 4) continue;
    k_min += (m - 2L) * c;
    k_max += binomial(m - 1, 2) * c;
  }
  inv.k_interval = {k_min, k_max};
  const long base = 9L * inv.v - 10L * inv.e + sum_2nf + report.r(3);
  inv.K2_interval = {base + k_min, base + k_max};
  return inv;
}

SmoothingInvariants smoothing_of(const InvariantReport& inv) {
  SmoothingInvariants s;
  s.g = inv.g;
  s.p_g = inv.p_omega;
  s.chi = inv.chi;
  s.K2_interval = inv.K2_interval;
  return s;
}

void check_scroll_range(long d, long g) {
  if (g < 0) range_fail("requires g >= 0");
  if (g == 0 && d < 2) range_fail("requires d >= 2 for g = 0");
  if (g == 1 && d < 5) range_fail("requires d >= 5 for g = 1");
  if (g >= 2 && d < 2 * g + 4) range_fail("requires d >= 2g+4 for g >= 2");
}

long hilbert_dim(long d, long g) {
  check_scroll_range(d, g);
  const long r1 = d - 2 * g + 2;
  return r1 * r1 + 7 * (g - 1);
}

long chi_normal(long d, long g) {
  check_scroll_range(d, g);
  return d * d - 4 * d * g + 4 * d + 4 * g * g - g - 3;
}

ParamBreakdown param_breakdown(long d, long g) {
  check_scroll_range(d, g);
  const long r = d - 2 * g + 1;
  ParamBreakdown out;
  out.terms = {
      {"class of the curve in M_g", 3 * g - 3},
      {"general point of U", 2 * d},
      {"projective transformations of P^r", (r + 1) * (r + 1) - 1},
      {"choice of codimension-two subspace", -(2 * d - 4 * g)},
      {"isomorphisms of the pencil with P^1", -3},
  };
  for (const auto& [_, c] : out.terms) out.total += c;
  return out;
}

SegreBounds segre_bounds(long d, long g) {
  if (g < 1) range_fail("requires g >= 1");
  if (d < 2 * g + 1) range_fail("requires d >= 2g+1");
  SegreBounds b;
  b.h0_min = d - 2 * g + 2;
  b.h0_max = d - g + 2;
  b.h1_min = 0;
  b.h1_max = g;
  b.rr_constant = d - 2 * g + 2;
  return b;
}

DecomposableH1 decomposable_h1(long g, long deg_L, long i, long d) {
  if (i < 1) range_fail("requires i >= 1");
  if (i > g) range_fail("requires i <= g");
  if (deg_L < 0) range_fail("requires deg_L >= 0");
  if (deg_L > 2 * g - 2) range_fail("requires deg_L <= 2g-2");
  if (d - deg_L < 2 * g + 1) range_fail("requires d - deg_L >= 2g+1");
  DecomposableH1 out;
  out.h1_total = i;
  out.h0_total = (deg_L - g + 1 + i) + (d - deg_L - g + 1);
  return out;
}

long brill_noether(long g, long r, long d) { return g - (r + 1) * (g - d + r); }

SpecialFamilyBound special_family_bound(long l, long eps, long d) {
  if (eps < 0 || eps > 3) range_fail("requires 0 <= eps <= 3");
  if (l < 0) range_fail("requires l >= 0");
  const long g = 4 * l + eps;
  if (g < 3) range_fail("requires g = 4l+eps >= 3");
  if (eps <= 1 && d < 2 * g + 10) range_fail("requires d >= 2g+10 when eps <= 1");
  if (eps >= 2 && d < 2 * g + 11) range_fail("requires d >= 2g+11 when eps >= 2");
  SpecialFamilyBound out;
  out.g = g;
  out.r = d - 2 * g + 1;
  out.lower_bound = (3 * g - 3) + g + eps + (out.r + 1) * l + ((out.r + 1) * (out.r + 1) - 1);
  out.hilbert = hilbert_dim(d, g);
  out.exceeds = out.lower_bound >= out.hilbert;
  return out;
}

QuadricCount quadric_count(long d, long g) {
  if (g < 0) range_fail("requires g >= 0");
  if (d < 2 * g + 2) range_fail("requires d >= 2g+2");
  const long r = d - g;
  QuadricCount q;
  q.through_curve = binomial(r + 2, 2) - (2 * d - g + 1);
  q.through_curve_and_codim3 = q.through_curve - binomial(r - 1, 2);
  return q;
}

}  // namespace zappatic
