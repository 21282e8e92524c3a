#include "zappatic/constructions.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace zappatic;

namespace {

void expect_profile(const ConstructionResult& r, int d, int g) {
  ASSERT_TRUE(r.report.is_zappatic) << d << "," << g;
  const InvariantReport i = invariants_of(r.report, r.graph);
  EXPECT_EQ(i.v, d);
  EXPECT_EQ(i.e, d + g - 1);
  EXPECT_EQ(r.report.r(3), d - 2 * g + 2);
  EXPECT_EQ(r.report.s(4), 2 * g - 2);
  EXPECT_EQ(i.g, g);
  EXPECT_EQ(i.chi, 1 - g);
  EXPECT_EQ(i.p_omega, 0);
  EXPECT_EQ(i.K2_interval, (Interval{8 * (1 - g), 6 * (1 - g)}));
}

bool same_invariants(const InvariantReport& a, const InvariantReport& b) {
  return a.v == b.v && a.e == b.e && a.r_counts == b.r_counts && a.s_counts == b.s_counts &&
         a.f_counts == b.f_counts && a.g == b.g && a.p_omega == b.p_omega && a.chi == b.chi &&
         a.k_interval == b.k_interval && a.K2_interval == b.K2_interval;
}

InvariantReport inv(const ConstructionResult& r) { return invariants_of(r.report, r.graph); }

}  // namespace

TEST(Chain, Counts) {
  const ConstructionResult c2 = chain_planes(2);
  EXPECT_EQ(c2.report.incidence.double_lines.size(), 1u);
  EXPECT_TRUE(c2.report.incidence.singular_points.empty());
  const ConstructionResult c6 = chain_planes(6);
  EXPECT_EQ(c6.report.r(3), 4);
  EXPECT_EQ(c6.report.incidence.double_lines.size(), 5u);
  EXPECT_THROW(chain_planes(1), RangeError);
}

TEST(Cycle, DisjointPairsIffSixPlanes) {
  EXPECT_THROW(cycle_planes(4), RangeError);
  for (int d = 5; d <= 12; ++d) {
    const ConstructionResult c = cycle_planes(d);
    EXPECT_EQ(c.report.r(3), d);
    bool disjoint = false;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) disjoint = disjoint || meet(c.arrangement.plane(i), c.arrangement.plane(j)).empty();
    EXPECT_EQ(disjoint, d >= 6) << d;
    EXPECT_EQ(first_disjoint_central_pair(c).has_value(), d >= 6);
  }
  const ConstructionResult c6 = cycle_planes(6);
  EXPECT_TRUE(meet(c6.arrangement.plane(0), c6.arrangement.plane(3)).empty());
}

TEST(Handle, AttachToCycle) {
  const ConstructionResult c6 = cycle_planes(6);
  const ConstructionResult h = attach_handle(c6, 0, 3, 9);
  EXPECT_EQ(h.arrangement.size(), 8u);
  expect_profile(h, 8, 2);
  ASSERT_EQ(h.attachments.size(), 1u);
  const AttachmentRecord& rec = h.attachments[0];
  EXPECT_EQ(rec.span_Pi.dim(), 3);
  EXPECT_TRUE(rec.anchor1.has_value());
  EXPECT_TRUE(rec.anchor2.has_value());
  EXPECT_THROW(attach_handle(c6, 0, 1, 9), GeometryError);
}

TEST(Handle, PiMeetsOnlyTheAnchorPlanes) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const ConstructionResult x = build_X(8, 2, seed);
    ASSERT_EQ(x.attachments.size(), 1u);
    const AttachmentRecord& rec = x.attachments[0];
    // Check against the arrangement before the new planes were added.
    Arrangement before(x.arrangement.ambient_dim());
    for (std::size_t k = 0; k < x.arrangement.size(); ++k)
      if (std::find(rec.new_plane_indices.begin(), rec.new_plane_indices.end(), static_cast<int>(k)) ==
          rec.new_plane_indices.end())
        before.add_plane(x.arrangement.plane(k));
    const TransversalityReport tr = verify_transversality(before, rec.span_Pi, {rec.l1, rec.l2});
    EXPECT_TRUE(tr.passed);
    std::vector<Subspace> curves;
    for (const auto& m : tr.intersections)
      if (m.dim() >= 1) curves.push_back(m);
    ASSERT_EQ(curves.size(), 2u);
    EXPECT_TRUE((curves[0] == rec.l1 && curves[1] == rec.l2) || (curves[0] == rec.l2 && curves[1] == rec.l1));
  }
}

TEST(Transversality, CycleFromChainExtraLine) {
  const ConstructionResult c = cycle_from_chain(5, 4);
  expect_profile(c, 5, 1);
  ASSERT_EQ(c.attachments.size(), 1u);
  const AttachmentRecord& rec = c.attachments[0];
  const Arrangement base = chain_planes(3).arrangement;
  const Subspace extra = meet(rec.span_Pi, base.plane(1));
  EXPECT_EQ(extra.dim(), 1);
  const TransversalityReport strict = verify_transversality(base, rec.span_Pi, {rec.l1, rec.l2});
  EXPECT_FALSE(strict.passed);
  EXPECT_EQ(strict.offending, std::vector<int>{1});
  EXPECT_TRUE(verify_transversality(base, rec.span_Pi, {rec.l1, rec.l2, extra}).passed);
  for (int d = 6; d <= 9; ++d) expect_profile(cycle_from_chain(d, 4), d, 1);
}

TEST(Transversality, PiContainingAPlaneFails) {
  const ConstructionResult c = cycle_planes(6);
  const Subspace Pi = span(c.arrangement.plane(2), coordinate_point(5, 0));
  const TransversalityReport tr = verify_transversality(c.arrangement, Pi, {});
  EXPECT_FALSE(tr.passed);
  EXPECT_NE(std::find(tr.offending.begin(), tr.offending.end(), 2), tr.offending.end());
}

TEST(BuildX, CountsAcrossRange) {
  expect_profile(build_X(8, 2, 7), 8, 2);
  expect_profile(build_X(12, 4, 7), 12, 4);
  for (int g = 2; g <= 4; ++g)
    for (int d = 2 * g + 4; d <= 2 * g + 7; ++d)
      for (std::uint64_t seed : {1u, 5u}) expect_profile(build_X(d, g, seed), d, g);
  const ConstructionResult x0 = build_X(6, 0, 1);
  EXPECT_EQ(x0.report.r(3), 4);
  EXPECT_EQ(inv(x0).g, 0);
  expect_profile(build_X(7, 1, 1), 7, 1);
  for (int g = 2; g <= 4; ++g) EXPECT_THROW(build_X(2 * g + 3, g, 1), RangeError);
}

TEST(BuildX, DiscrepancyNote) {
  const ConstructionResult x = build_X(8, 2, 1);
  ASSERT_EQ(x.discrepancies.size(), 1u);
  EXPECT_NE(x.discrepancies[0].find("3g+6+c"), std::string::npos);
  EXPECT_NE(x.discrepancies[0].find("d+g-1 = 9"), std::string::npos);
}

TEST(BuildX, Deterministic) {
  const ConstructionResult a = build_X(10, 3, 42), b = build_X(10, 3, 42);
  ASSERT_EQ(a.arrangement.size(), b.arrangement.size());
  for (std::size_t k = 0; k < a.arrangement.size(); ++k) EXPECT_EQ(a.arrangement.plane(k), b.arrangement.plane(k));
  const ConstructionResult c = build_X(10, 3, 43);
  bool differs = false;
  for (std::size_t k = 0; k < a.arrangement.size(); ++k) differs = differs || !(a.arrangement.plane(k) == c.arrangement.plane(k));
  EXPECT_TRUE(differs);
}

TEST(BuildY, Counts) {
  const ConstructionResult y = build_Y(13, 3, 1);
  expect_profile(y, 13, 3);
  EXPECT_EQ(y.graph.edges.size(), 15u);
  expect_profile(build_Y(9, 2, 1), 9, 2);
  for (int g = 2; g <= 4; ++g)
    for (int d = 4 * g + 1; d <= 4 * g + 3; ++d) expect_profile(build_Y(d, g, 3), d, g);
  EXPECT_THROW(build_Y(8, 2, 1), RangeError);
}

TEST(BuildZ, Counts) {
  const ConstructionResult z = build_Z(8, 2, 1);
  expect_profile(z, 8, 2);
  EXPECT_EQ(z.graph.edges.size(), 9u);
  ASSERT_FALSE(z.discrepancies.empty());
  EXPECT_NE(z.discrepancies.back().find("d-2g+1"), std::string::npos);
  expect_profile(build_Z(11, 3, 1), 11, 3);
  const ConstructionResult z5 = build_Z(5, 1, 1);
  expect_profile(z5, 5, 1);
  for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(z5.arrangement.plane(k), cycle_planes(5).arrangement.plane(k));
  for (int g = 2; g <= 4; ++g)
    for (int d = 3 * g + 2; d <= 3 * g + 4; ++d) expect_profile(build_Z(d, g, 2), d, g);
  EXPECT_THROW(build_Z(7, 2, 1), RangeError);
}

TEST(Families, SameInvariantProfile) {
  for (auto [d, g] : {std::pair{9, 2}, {10, 2}, {13, 3}, {14, 3}, {17, 4}}) {
    const InvariantReport x = inv(build_X(d, g, 1));
    EXPECT_TRUE(same_invariants(x, inv(build_Y(d, g, 1)))) << d << "," << g;
    EXPECT_TRUE(same_invariants(x, inv(build_Z(d, g, 1)))) << d << "," << g;
  }
}
