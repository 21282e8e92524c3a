#include "zappatic/constructions.hpp"
#include "zappatic/invariants.hpp"

#include <gtest/gtest.h>

using namespace zappatic;

TEST(Hilbert, FrozenValues) {
  EXPECT_EQ(hilbert_dim(5, 0), 42);
  EXPECT_EQ(hilbert_dim(8, 2), 43);
  EXPECT_EQ(chi_normal(8, 2), 43);
  EXPECT_EQ(chi_normal(5, 0), 42);
  for (long g = 2; g <= 4; ++g) EXPECT_EQ(hilbert_dim(2 * g + 4, g), 36 + 7 * (g - 1));
  for (long d = 2; d <= 20; ++d) EXPECT_EQ(hilbert_dim(d, 0), d * d + 4 * d - 3);
}

TEST(Hilbert, ThreeCodePathsAgree) {
  Sampler s(31);
  for (int trial = 0; trial < 100; ++trial) {
    const long g = s.uniform(0, 12);
    const long lo = g == 0 ? 2 : g == 1 ? 5 : 2 * g + 4;
    const long d = s.uniform(lo, lo + 30);
    EXPECT_EQ(hilbert_dim(d, g), chi_normal(d, g)) << d << "," << g;
    EXPECT_EQ(hilbert_dim(d, g), param_breakdown(d, g).total) << d << "," << g;
  }
}

TEST(Hilbert, Breakdown) {
  const ParamBreakdown pb = param_breakdown(10, 3);
  ASSERT_EQ(pb.terms.size(), 5u);
  const long expected[] = {6, 20, 35, -8, -3};
  for (int k = 0; k < 5; ++k) EXPECT_EQ(pb.terms[k].second, expected[k]);
  EXPECT_EQ(pb.total, 50);
}

TEST(Hilbert, RangeErrors) {
  EXPECT_THROW(hilbert_dim(7, 2), RangeError);
  EXPECT_THROW(hilbert_dim(4, 1), RangeError);
  EXPECT_THROW(hilbert_dim(1, 0), RangeError);
  try {
    hilbert_dim(9, 3);
    FAIL();
  } catch (const RangeError& e) {
    EXPECT_NE(std::string(e.what()).find("d >= 2g+4"), std::string::npos);
  }
}

TEST(Segre, Bounds) {
  const SegreBounds b = segre_bounds(3, 1);
  EXPECT_EQ(b.h0_min, 3);
  EXPECT_EQ(b.h0_max, 4);
  EXPECT_EQ(b.h1_min, 0);
  EXPECT_EQ(b.h1_max, 1);
  for (long g = 1; g <= 8; ++g) {
    const SegreBounds m = segre_bounds(2 * g + 1, g);
    EXPECT_EQ(m.h0_min, 3);
    EXPECT_EQ(m.h0_max, g + 3);
    for (long d = 2 * g + 1; d < 2 * g + 12; ++d) {
      const SegreBounds w = segre_bounds(d, g);
      EXPECT_EQ(w.h0_max - w.h0_min, g);
      EXPECT_EQ(w.h1_max - w.h1_min, g);
      EXPECT_EQ(w.h0_min - w.h1_min, w.rr_constant);
      EXPECT_EQ(w.h0_max - w.h1_max, w.rr_constant);
    }
  }
}

TEST(Segre, DecomposableH1) {
  const DecomposableH1 c = decomposable_h1(3, 4, 1, 16);
  EXPECT_EQ(c.h1_total, 1);
  EXPECT_EQ(c.h0_total, 13);
  for (long g = 1; g <= 6; ++g) {
    const long d = 2 * g + 5;
    EXPECT_EQ(decomposable_h1(g, 0, g, d).h0_total, d - g + 2);
  }
  EXPECT_THROW(decomposable_h1(3, 4, 0, 16), RangeError);
}

TEST(BrillNoether, Values) {
  EXPECT_EQ(brill_noether(4, 3, 6), 0);
  EXPECT_EQ(brill_noether(7, 3, 9), 3);
  for (long g = 0; g <= 10; ++g) EXPECT_EQ(brill_noether(g, 0, 0), 0);
}

TEST(SpecialFamily, Bound) {
  const SpecialFamilyBound b = special_family_bound(1, 0, 18);
  EXPECT_EQ(b.g, 4);
  EXPECT_EQ(b.r, 11);
  EXPECT_EQ(b.lower_bound, 168);
  EXPECT_EQ(b.hilbert, 165);
  EXPECT_TRUE(b.exceeds);
  EXPECT_EQ(b.hilbert, hilbert_dim(18, 4));
  EXPECT_TRUE(special_family_bound(1, 2, 23).exceeds);
  EXPECT_THROW(special_family_bound(1, 0, 12), RangeError);
  // lower - hilbert simplifies to l(r-11) - 2 eps + 3 once g = 4l + eps.
  for (long l = 1; l <= 4; ++l)
    for (long eps = 0; eps <= 3; ++eps) {
      const long g = 4 * l + eps;
      if (g < 3) continue;
      const long d = 2 * g + (eps <= 1 ? 10 : 11);
      const SpecialFamilyBound c = special_family_bound(l, eps, d);
      EXPECT_EQ(c.lower_bound - c.hilbert, l * (c.r + 1 - 12) - 2 * eps + 3) << l << "," << eps;
    }
}

TEST(Quadrics, Counts) {
  EXPECT_EQ(quadric_count(3, 0).through_curve, 3);
  EXPECT_EQ(quadric_count(3, 0).through_curve_and_codim3, 2);
  EXPECT_EQ(quadric_count(4, 0).through_curve, binomial(6, 2) - 9);
  EXPECT_EQ(quadric_count(5, 0).through_curve, 10);
  EXPECT_EQ(binomial(6, 2), 15);
  EXPECT_EQ(binomial(3, 5), 0);
}

TEST(Quadrics, FormulaMatchesKernelOracle) {
  Sampler s(12);
  for (int d = 3; d <= 5; ++d) {
    std::vector<ProjPoint> pts;
    for (int t = 0; t < 2 * d + 2; ++t) {
      Vec v(d + 1);
      Rat pw = 1;
      for (int k = 0; k <= d; ++k, pw *= t + 1) v[k] = pw;
      pts.emplace_back(v);
    }
    EXPECT_EQ(quadrics_through(pts, {}, d).dimension + 1, quadric_count(d, 0).through_curve);
    Matrix rows;
    for (int k = 0; k <= d - 3; ++k) rows.push_back(s.integer_vector(d + 1, 20));
    const Subspace sub(d, rows);
    ASSERT_EQ(sub.dim(), d - 3);
    EXPECT_EQ(quadrics_through(pts, {sub}, d).dimension + 1, quadric_count(d, 0).through_curve_and_codim3);
  }
}

TEST(Invariants, ChainAndCycle) {
  const ConstructionResult c = chain_planes(5);
  const InvariantReport i = invariants_of(c.report, c.graph);
  EXPECT_EQ(i.g, 0);
  EXPECT_EQ(i.chi, 1);
  EXPECT_EQ(i.K2_interval, (Interval{8, 8}));
  const ConstructionResult z = cycle_planes(7);
  const InvariantReport j = invariants_of(z.report, z.graph);
  EXPECT_EQ(j.g, 1);
  EXPECT_EQ(j.chi, 0);
  EXPECT_EQ(j.p_omega, 0);
  EXPECT_EQ(j.K2_interval, (Interval{0, 0}));
}

TEST(Invariants, KSquaredOfHandleFamilies) {
  for (int g = 2; g <= 4; ++g) {
    for (int d = 2 * g + 4; d <= 2 * g + 8; ++d) {
      const ConstructionResult x = build_X(d, g, 1);
      const InvariantReport i = invariants_of(x.report, x.graph);
      EXPECT_EQ(i.K2_interval, (Interval{8 * (1 - g), 6 * (1 - g)})) << d << "," << g;
      EXPECT_EQ(i.chi, 1 - g);
      EXPECT_EQ(i.p_omega, 0);
      const SmoothingInvariants s = smoothing_of(i);
      EXPECT_EQ(s.g, g);
      EXPECT_EQ(s.chi, 1 - g);
      EXPECT_EQ(s.K2_interval, i.K2_interval);
    }
  }
}

TEST(Invariants, ScrollRange) {
  EXPECT_NO_THROW(check_scroll_range(2, 0));
  EXPECT_NO_THROW(check_scroll_range(5, 1));
  EXPECT_NO_THROW(check_scroll_range(8, 2));
  EXPECT_THROW(check_scroll_range(4, 1), RangeError);
  EXPECT_THROW(check_scroll_range(2 * 3 + 3, 3), RangeError);
}
