#include "zappatic/constructions.hpp"

#include <sstream>

namespace zappatic {

namespace {

Vec random_combination(const Matrix& rows, Sampler& s, bool all_nonzero) {
  Vec out(rows.front().size(), Rat(0));
  for (const auto& r : rows) {
    const Rat c = static_cast<long>(all_nonzero ? s.nonzero(kDefaultHeight) : s.uniform(-kDefaultHeight, kDefaultHeight));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += c * r[k];
  }
  return out;
}

bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

ProjPoint random_point_in(const Subspace& s, Sampler& sampler) {
  while (true) {
    Vec v = random_combination(s.basis(), sampler, false);
    if (!is_zero(v)) return ProjPoint(std::move(v));
  }
}

// A line of `plane` through p, or a free line when p is absent.
Subspace random_line(const Subspace& plane, const std::optional<ProjPoint>& p, Sampler& sampler) {
  while (true) {
    const ProjPoint a = p ? *p : random_point_in(plane, sampler);
    const ProjPoint b = random_point_in(plane, sampler);
    Subspace l = span({a, b}, plane.ambient_dim());
    if (l.dim() == 1) return l;
  }
}

// A point on the line with both coordinates along its basis nonzero, so it
// avoids the points recorded as the line's RREF basis.
ProjPoint random_point_on(const Subspace& line, Sampler& sampler) {
  return ProjPoint(random_combination(line.basis(), sampler, true));
}

Subspace plane_from(const Subspace& line, const ProjPoint& p) { return span(line, p); }

struct Expectation {
  int planes = 0, edges = 0, r3 = 0, s4 = 0;
};

std::string check_counts(const ConstructionResult& before, const ConstructionResult& after, const Expectation& want) {
  if (!after.report.is_zappatic) {
    return "not Zappatic: " + (after.report.violations.empty() ? std::string("?") : after.report.violations.front());
  }
  std::ostringstream os;
  const int dv = static_cast<int>(after.arrangement.size() - before.arrangement.size());
  const int de = static_cast<int>(after.graph.edges.size() - before.graph.edges.size());
  const int dr = after.report.r(3) - before.report.r(3);
  const int ds = after.report.s(4) - before.report.s(4);
  if (dv != want.planes || de != want.edges || dr != want.r3 || ds != want.s4) {
    os << "unexpected deltas: planes " << dv << " edges " << de << " R3 " << dr << " S4 " << ds;
    return os.str();
  }
  // Nothing but R3 and S4 should ever appear in these families.
  for (const auto& [n, c] : after.report.r_counts)
    if (n != 3 && c) return "unexpected R" + std::to_string(n);
  for (const auto& [n, c] : after.report.s_counts)
    if (n != 4 && c) return "unexpected S" + std::to_string(n);
  if (!after.report.f_counts.empty()) return "unexpected E point";
  return {};
}

std::optional<ProjPoint> r3_point_with_center(const ZappaticReport& rep, int plane) {
  for (std::size_t k = 0; k < rep.types.size(); ++k) {
    const auto& t = rep.types[k];
    if (t.kind == SingularityType::Kind::R && t.n == 3 && t.central == plane) return rep.incidence.singular_points[k].point;
  }
  return std::nullopt;
}

// Attaches the two-plane limit of a quadric through l1 in plane i and l2
// in plane j.
ConstructionResult attach_quadric_pair(const ConstructionResult& base, int i, int j,
                                       const std::optional<ProjPoint>& anchor_i,
                                       const std::optional<ProjPoint>& anchor_j, std::uint64_t seed,
                                       bool require_transversal, const Expectation& want) {
  const Arrangement& arr = base.arrangement;
  std::string last_failure = "no attempt made";
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    Sampler sampler(mix_seed(seed, static_cast<std::uint64_t>(attempt)));
    const Subspace l1 = random_line(arr.plane(i), anchor_i, sampler);
    const Subspace l2 = random_line(arr.plane(j), anchor_j, sampler);
    const Subspace Pi = span(l1, l2);
    if (Pi.dim() != 3) {
      last_failure = "lines not skew";
      continue;
    }
    if (require_transversal) {
      const auto tr = verify_transversality(arr, Pi, {l1, l2});
      if (!tr.passed) {
        last_failure = "span meets plane " + std::to_string(tr.offending.front()) + " along a curve";
        continue;
      }
    }
    const ProjPoint a = random_point_on(l1, sampler);
    const ProjPoint b = random_point_on(l2, sampler);
    Arrangement next = arr;
    AttachmentRecord rec;
    try {
      rec.new_plane_indices.push_back(next.add_plane(plane_from(l2, a)));
      rec.new_plane_indices.push_back(next.add_plane(plane_from(l1, b)));
    } catch (const GeometryError& e) {
      last_failure = e.what();
      continue;
    }
    ConstructionResult out = analyse(std::move(next));
    const std::string why = check_counts(base, out, want);
    if (!why.empty()) {
      last_failure = why;
      continue;
    }
    rec.chosen_planes = {i, j};
    rec.anchor1 = anchor_i;
    rec.anchor2 = anchor_j;
    rec.l1 = l1;
    rec.l2 = l2;
    rec.span_Pi = Pi;
    rec.container = Pi;
    rec.seed = seed;
    rec.retries = attempt;
    out.attachments = base.attachments;
    out.attachments.push_back(std::move(rec));
    out.discrepancies = base.discrepancies;
    return out;
  }
  std::ostringstream os;
  os << "no general choice found for planes " << i << ", " << j << " after " << kMaxRetries
     << " attempts (last failure: " << last_failure << ")";
  throw GenericityError(os.str());
}

std::string edge_note(const char* stated_formula, long stated, long derived) {
  std::ostringstream os;
  os << "edge count discrepancy: stated " << stated_formula << " = " << stated << ", derived d+g-1 = " << derived
     << " (forced by g = e-v+1)";
  return os.str();
}

}  // namespace

ConstructionResult analyse(Arrangement arr) {
  ConstructionResult r;
  r.report = zappatic_report(arr);
  if (r.report.is_zappatic) r.graph = build_dual_graph(arr, r.report);
  r.arrangement = std::move(arr);
  return r;
}

ConstructionResult chain_planes(int d) {
  if (d < 2) throw RangeError("chain requires d >= 2");
  const int r = d + 1;
  Arrangement arr(r);
  for (int k = 0; k < d; ++k) {
    arr.add_plane(span({coordinate_point(r, k), coordinate_point(r, k + 1), coordinate_point(r, k + 2)}, r));
  }
  return analyse(std::move(arr));
}

ConstructionResult cycle_planes(int d) {
  if (d < 5) throw RangeError("cycle requires d >= 5");
  const int r = d - 1;
  Arrangement arr(r);
  for (int k = 0; k < d; ++k) {
    arr.add_plane(span({coordinate_point(r, (k + d - 1) % d), coordinate_point(r, k), coordinate_point(r, (k + 1) % d)}, r));
  }
  return analyse(std::move(arr));
}

std::vector<std::pair<int, std::size_t>> r3_central_planes(const ZappaticReport& report) {
  std::vector<std::pair<int, std::size_t>> out;
  for (std::size_t k = 0; k < report.types.size(); ++k) {
    const auto& t = report.types[k];
    if (t.kind == SingularityType::Kind::R && t.n == 3) out.emplace_back(t.central, k);
  }
  return out;
}

namespace {

template <class Pred>
std::optional<std::pair<int, int>> first_central_pair(const ConstructionResult& r, Pred ok) {
  std::vector<bool> central(r.arrangement.size(), false);
  for (const auto& [p, _] : r3_central_planes(r.report)) central[p] = true;
  const int v = static_cast<int>(r.arrangement.size());
  for (int i = 0; i < v; ++i) {
    if (!central[i]) continue;
    for (int j = i + 1; j < v; ++j) {
      if (central[j] && ok(meet(r.arrangement.plane(i), r.arrangement.plane(j)))) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::pair<int, int>> first_disjoint_central_pair(const ConstructionResult& r) {
  return first_central_pair(r, [](const Subspace& m) { return m.empty(); });
}

ConstructionResult attach_handle(const ConstructionResult& base, int i, int j, std::uint64_t seed) {
  const int v = static_cast<int>(base.arrangement.size());
  if (i < 0 || j < 0 || i >= v || j >= v || i == j) throw GeometryError("plane index out of range");
  if (!meet(base.arrangement.plane(i), base.arrangement.plane(j)).empty())
    throw GeometryError("planes " + std::to_string(i) + " and " + std::to_string(j) + " are not disjoint");
  const auto pi = r3_point_with_center(base.report, i);
  const auto pj = r3_point_with_center(base.report, j);
  if (!pi) throw GeometryError("plane " + std::to_string(i) + " is not central for an R3 point");
  if (!pj) throw GeometryError("plane " + std::to_string(j) + " is not central for an R3 point");
  return attach_quadric_pair(base, i, j, pi, pj, seed, true, Expectation{2, 3, 0, 2});
}

ConstructionResult build_X(int d, int g, std::uint64_t seed) {
  check_scroll_range(d, g);
  if (g == 0) return chain_planes(d);
  if (g == 1) return cycle_planes(d);
  ConstructionResult r = cycle_planes(d - 2 * (g - 1));
  for (int h = 1; h < g; ++h) {
    const auto pair = first_disjoint_central_pair(r);
    if (!pair) throw std::logic_error("no pair of disjoint R3-central planes");
    r = attach_handle(r, pair->first, pair->second, mix_seed(seed, 0x58, static_cast<std::uint64_t>(h)));
  }
  const long c = d - 2L * g - 4;
  r.discrepancies.push_back(edge_note("3g+6+c", 3L * g + 6 + c, d + g - 1L));
  return r;
}

ConstructionResult build_Y(int d, int g, std::uint64_t seed) {
  if (g < 2) throw RangeError("Y requires g >= 2");
  if (d <= 4 * g) throw RangeError("Y requires d > 4g");
  const int dp = d - 2 * g;
  ConstructionResult r = chain_planes(dp);
  // Free lines on the two end planes: each adds an R3 where the line crosses
  // the end double line, plus the two points on the new double line.
  r = attach_quadric_pair(r, 0, dp - 1, std::nullopt, std::nullopt, mix_seed(seed, 0x59, 1), false,
                          Expectation{2, 3, 4, 0});
  for (int i = 2; i <= g; ++i) {
    const int a = i - 1;
    const int b = dp - i;
    const auto pa = r3_point_with_center(r.report, a);
    const auto pb = r3_point_with_center(r.report, b);
    if (!pa || !pb) throw std::logic_error("chain plane lost its R3 point");
    r = attach_quadric_pair(r, a, b, pa, pb, mix_seed(seed, 0x59, static_cast<std::uint64_t>(i)), false,
                            Expectation{2, 3, 0, 2});
  }
  return r;
}

namespace {

ConstructionResult attach_cubic(const ConstructionResult& base, int i, int j, std::uint64_t seed) {
  const Arrangement& arr = base.arrangement;
  const int r = arr.ambient_dim();
  const auto pi = r3_point_with_center(base.report, i);
  const auto pj = r3_point_with_center(base.report, j);
  if (!pi || !pj) throw std::logic_error("cubic attachment anchors are not R3-central");
  std::string last_failure = "no attempt made";
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    Sampler sampler(mix_seed(seed, static_cast<std::uint64_t>(attempt)));
    const Subspace l1 = random_line(arr.plane(i), pi, sampler);
    const Subspace l2 = random_line(arr.plane(j), pj, sampler);
    const Subspace Pi = span(l1, l2);
    if (Pi.dim() != 3) {
      last_failure = "lines not skew";
      continue;
    }
    Vec cv = sampler.integer_vector(r + 1, kDefaultHeight);
    cv[r] = static_cast<long>(sampler.nonzero(kDefaultHeight));
    const ProjPoint c(std::move(cv));
    const Subspace P4 = span(Pi, c);
    if (P4.dim() != 4) {
      last_failure = "container not a P^4";
      continue;
    }
    const ProjPoint a = random_point_on(l1, sampler);
    const ProjPoint b = random_point_on(l2, sampler);
    Arrangement next = arr;
    AttachmentRecord rec;
    try {
      rec.new_plane_indices.push_back(next.add_plane(plane_from(l2, c)));
      rec.new_plane_indices.push_back(next.add_plane(span({a, b, c}, r)));
      rec.new_plane_indices.push_back(next.add_plane(plane_from(l1, c)));
    } catch (const GeometryError& e) {
      last_failure = e.what();
      continue;
    }
    ConstructionResult out = analyse(std::move(next));
    const std::string why = check_counts(base, out, Expectation{3, 4, 1, 2});
    if (!why.empty()) {
      last_failure = why;
      continue;
    }
    rec.chosen_planes = {i, j};
    rec.anchor1 = pi;
    rec.anchor2 = pj;
    rec.l1 = l1;
    rec.l2 = l2;
    rec.span_Pi = Pi;
    rec.container = P4;
    rec.seed = seed;
    rec.retries = attempt;
    out.attachments = base.attachments;
    out.attachments.push_back(std::move(rec));
    return out;
  }
  std::ostringstream os;
  os << "no general cubic attachment for planes " << i << ", " << j << " after " << kMaxRetries
     << " attempts (last failure: " << last_failure << ")";
  throw GenericityError(os.str());
}

AttachmentRecord embed_record(const AttachmentRecord& rec) {
  AttachmentRecord out = rec;
  auto lift = [](const std::optional<ProjPoint>& p) -> std::optional<ProjPoint> {
    if (!p) return std::nullopt;
    Vec v = p->coords();
    v.push_back(0);
    return ProjPoint(std::move(v));
  };
  out.anchor1 = lift(rec.anchor1);
  out.anchor2 = lift(rec.anchor2);
  out.l1 = embed(rec.l1, 1);
  out.l2 = embed(rec.l2, 1);
  out.span_Pi = embed(rec.span_Pi, 1);
  out.container = embed(rec.container, 1);
  return out;
}

ConstructionResult build_Z_inner(int d, int g, std::uint64_t seed) {
  if (g == 1) return cycle_planes(d);
  const ConstructionResult prev = build_Z_inner(d - 3, g - 1, seed);
  ConstructionResult base = analyse(embed(prev.arrangement, 1));
  for (const auto& rec : prev.attachments) base.attachments.push_back(embed_record(rec));

  auto pair = first_disjoint_central_pair(base);
  if (!pair && d == 8 && g == 2) {
    pair = first_central_pair(base, [](const Subspace& m) { return m.dim() < 1; });
  }
  if (!pair) throw std::logic_error("no admissible pair of R3-central planes");
  return attach_cubic(base, pair->first, pair->second, mix_seed(seed, 0x5a, static_cast<std::uint64_t>(g)));
}

}  // namespace

ConstructionResult build_Z(int d, int g, std::uint64_t seed) {
  if (g < 1) throw RangeError("Z requires g >= 1");
  if (d < 3 * g + 2) throw RangeError("Z requires d >= 3g+2");
  if (g == 1 && d < 5) throw RangeError("Z requires d >= 5 for g = 1");
  ConstructionResult r = build_Z_inner(d, g, seed);
  r.discrepancies.push_back(edge_note("d-2g+1", d - 2L * g + 1, d + g - 1L));
  return r;
}

ConstructionResult cycle_from_chain(int d, std::uint64_t seed) {
  if (d < 5) throw RangeError("cycle requires d >= 5");
  const ConstructionResult base = chain_planes(d - 2);
  const Arrangement& arr = base.arrangement;
  const int last = d - 3;
  std::string last_failure = "no attempt made";
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    Sampler sampler(mix_seed(seed, 0x43, static_cast<std::uint64_t>(attempt)));
    const Subspace l1 = random_line(arr.plane(0), std::nullopt, sampler);
    const Subspace l2 = random_line(arr.plane(last), std::nullopt, sampler);
    const Subspace Pi = span(l1, l2);
    if (Pi.dim() != 3) {
      last_failure = "lines not skew";
      continue;
    }
    // The free lines must avoid the end R3 points.
    bool through_point = false;
    for (const auto& sp : base.report.incidence.singular_points)
      through_point = through_point || l1.contains(sp.point) || l2.contains(sp.point);
    if (through_point) {
      last_failure = "free line through an R3 point";
      continue;
    }
    std::vector<Subspace> expected{l1, l2};
    if (d == 5) {
      const Subspace extra = meet(Pi, arr.plane(1));
      if (extra.dim() == 1) expected.push_back(extra);
    }
    if (!verify_transversality(arr, Pi, expected).passed) {
      last_failure = "span meets a plane along an unexpected curve";
      continue;
    }
    const ProjPoint a = random_point_on(l1, sampler);
    const ProjPoint b = random_point_on(l2, sampler);
    Arrangement next = arr;
    AttachmentRecord rec;
    try {
      rec.new_plane_indices.push_back(next.add_plane(plane_from(l2, a)));
      rec.new_plane_indices.push_back(next.add_plane(plane_from(l1, b)));
    } catch (const GeometryError& e) {
      last_failure = e.what();
      continue;
    }
    ConstructionResult out = analyse(std::move(next));
    const std::string why = check_counts(base, out, Expectation{2, 3, 4, 0});
    if (!why.empty()) {
      last_failure = why;
      continue;
    }
    rec.chosen_planes = {0, last};
    rec.l1 = l1;
    rec.l2 = l2;
    rec.span_Pi = Pi;
    rec.container = Pi;
    rec.seed = seed;
    rec.retries = attempt;
    out.attachments.push_back(std::move(rec));
    return out;
  }
  throw GenericityError("no general closing quadric for chain of " + std::to_string(d - 2) +
                        " planes (last failure: " + last_failure + ")");
}

TransversalityReport verify_transversality(const Arrangement& arr, const Subspace& Pi,
                                           const std::vector<Subspace>& expected) {
  TransversalityReport rep;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    Subspace m = meet(Pi, arr.plane(k));
    if (m.dim() >= 1) {
      bool ok = false;
      for (const auto& e : expected) ok = ok || e == m;
      if (!ok) {
        rep.passed = false;
        rep.offending.push_back(static_cast<int>(k));
      }
    }
    rep.intersections.push_back(std::move(m));
  }
  return rep;
}

}  // namespace zappatic
