#pragma once

// Closed-form invariants, bounds and dimension counts.

#include "zappatic/arrangement.hpp"
#include "zappatic/zappatic_complex.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zappatic {

/// Raised when a formula is evaluated outside the range where it holds.
class RangeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Interval = std::pair<long, long>;

struct InvariantReport {
  int v = 0, e = 0;
  std::map<int, int> r_counts, s_counts, f_counts;
  int g = 0;
  int p_omega = 0;
  int chi = 0;
  Interval k_interval{0, 0};
  Interval K2_interval{0, 0};
};

struct SmoothingInvariants {
  int g = 0, p_g = 0, chi = 0;
  Interval K2_interval{0, 0};
};

InvariantReport invariants_of(const ZappaticReport& report, const DualGraph& graph);
SmoothingInvariants smoothing_of(const InvariantReport& inv);

/// Throws RangeError unless (d, g) lies in the scroll range:
/// g = 0 and d >= 2, g = 1 and d >= 5, or g >= 2 and d >= 2g+4.
void check_scroll_range(long d, long g);

long hilbert_dim(long d, long g);
long chi_normal(long d, long g);

struct ParamBreakdown {
  std::vector<std::pair<std::string, long>> terms;
  long total = 0;
};
ParamBreakdown param_breakdown(long d, long g);

struct SegreBounds {
  long h0_min = 0, h0_max = 0, h1_min = 0, h1_max = 0;
  long rr_constant = 0;  // h0 - h1 on every bundle in the range
};
SegreBounds segre_bounds(long d, long g);

struct DecomposableH1 {
  long h1_total = 0, h0_total = 0;
};
DecomposableH1 decomposable_h1(long g, long deg_L, long i, long d);

long brill_noether(long g, long r, long d);

// Dimension count for the family of scrolls over curves of genus 4l+eps
// with a special g^3_m, compared with hilbert_dim.
struct SpecialFamilyBound {
  long g = 0, r = 0;
  long lower_bound = 0, hilbert = 0;
  bool exceeds = false;
};
SpecialFamilyBound special_family_bound(long l, long eps, long d);

struct QuadricCount {
  long through_curve = 0, through_curve_and_codim3 = 0;
};
QuadricCount quadric_count(long d, long g);

long binomial(long n, long k);

}  // namespace zappatic
