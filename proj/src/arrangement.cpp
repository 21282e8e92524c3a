#include "zappatic/arrangement.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace zappatic {

Arrangement::Arrangement(int ambient_dim, const std::vector<Subspace>& planes) : ambient_dim_(ambient_dim) {
  for (const auto& p : planes) add_plane(p);
}

int Arrangement::add_plane(const Subspace& s) {
  if (s.dim() != 2) throw GeometryError("arrangement component is not a plane");
  if (s.ambient_dim() != ambient_dim_) throw GeometryError("plane lies in a different ambient space");
  for (const auto& p : planes_) {
    if (p.subspace == s) throw GeometryError("duplicate plane in arrangement");
  }
  const int label = static_cast<int>(planes_.size());
  planes_.push_back(Plane{s, label});
  return label;
}

Arrangement transform(const Matrix& m, const Arrangement& arr) {
  Arrangement out(static_cast<int>(m.size()) - 1);
  for (const auto& p : arr.planes()) out.add_plane(transform(m, p.subspace));
  return out;
}

Arrangement embed(const Arrangement& arr, int extra) {
  Arrangement out(arr.ambient_dim() + extra);
  for (const auto& p : arr.planes()) out.add_plane(embed(p.subspace, extra));
  return out;
}

IncidenceData compute_incidence(const Arrangement& arr) {
  IncidenceData inc;
  const int v = static_cast<int>(arr.size());
  for (int i = 0; i < v; ++i) {
    for (int j = i + 1; j < v; ++j) {
      Subspace m = meet(arr.plane(i), arr.plane(j));
      if (m.dim() == 2) throw GeometryError("two planes coincide");
      if (m.dim() == 1) inc.double_lines.push_back(DoubleLine{i, j, std::move(m)});
      else if (m.dim() == 0) inc.point_meets.push_back(PointMeet{i, j, m.point()});
    }
  }

  std::set<ProjPoint> candidates;
  for (std::size_t a = 0; a < inc.double_lines.size(); ++a) {
    for (std::size_t b = a + 1; b < inc.double_lines.size(); ++b) {
      const Subspace m = meet(inc.double_lines[a].line, inc.double_lines[b].line);
      if (m.dim() == 0) candidates.insert(m.point());
    }
  }
  for (const auto& pm : inc.point_meets) candidates.insert(pm.point);

  for (const auto& p : candidates) {
    SingularPoint sp{p, {}, {}};
    for (int i = 0; i < v; ++i) {
      if (arr.plane(i).contains(p)) sp.planes.push_back(i);
    }
    for (const auto& dl : inc.double_lines) {
      if (dl.line.contains(p)) sp.local_edges.emplace_back(dl.i, dl.j);
    }
    inc.singular_points.push_back(std::move(sp));
  }
  return inc;
}

std::string SingularityType::to_string() const {
  switch (kind) {
    case Kind::R: return "R" + std::to_string(n);
    case Kind::S: return "S" + std::to_string(n);
    case Kind::E: return "E" + std::to_string(n);
    case Kind::NonZappatic: break;
  }
  return "NonZappatic(" + reason + ")";
}

namespace {

SingularityType non_zappatic(int n, std::string reason) {
  SingularityType t;
  t.kind = SingularityType::Kind::NonZappatic;
  t.n = n;
  t.reason = std::move(reason);
  return t;
}

bool connected(const std::vector<int>& verts, const std::vector<Edge>& edges) {
  if (verts.empty()) return true;
  std::set<int> seen{verts.front()};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [a, b] : edges) {
      if (seen.count(a) != seen.count(b)) {
        seen.insert(a);
        seen.insert(b);
        grew = true;
      }
    }
  }
  return seen.size() == verts.size();
}

}  // namespace

SingularityType classify_point(const Arrangement& arr, const IncidenceData& inc, std::size_t point_index) {
  const SingularPoint& sp = inc.singular_points.at(point_index);
  const int n = static_cast<int>(sp.planes.size());
  if (n == 2 && sp.local_edges.empty()) return non_zappatic(n, "isolated plane-pair contact");
  if (n < 3) return non_zappatic(n, "fewer than three planes");

  std::map<int, int> degree;
  for (int p : sp.planes) degree[p] = 0;
  for (const auto& [a, b] : sp.local_edges) {
    ++degree[a];
    ++degree[b];
  }
  const int e = static_cast<int>(sp.local_edges.size());
  const bool conn = connected(sp.planes, sp.local_edges);
  int max_deg = 0, ones = 0, twos = 0, hub = -1;
  for (const auto& [p, dg] : degree) {
    if (dg > max_deg) {
      max_deg = dg;
      hub = p;
    }
    ones += dg == 1;
    twos += dg == 2;
  }

  SingularityType t;
  t.n = n;
  int need_span = 0;
  if (conn && e == n - 1 && max_deg <= 2) {
    t.kind = SingularityType::Kind::R;
    need_span = n + 1;
    if (n == 3) t.central = hub;
  } else if (conn && e == n - 1 && max_deg == n - 1 && ones == n - 1) {
    t.kind = SingularityType::Kind::S;
    need_span = n + 1;
    t.central = hub;
  } else if (conn && e == n && twos == n) {
    t.kind = SingularityType::Kind::E;
    need_span = n;
  } else {
    return non_zappatic(n, "local graph not chain/fork/cycle");
  }

  Subspace s(arr.ambient_dim());
  for (int p : sp.planes) s = span(s, arr.plane(p));
  if (s.dim() != need_span) return non_zappatic(n, "span too small");
  return t;
}

int ZappaticReport::r(int n) const {
  auto it = r_counts.find(n);
  return it == r_counts.end() ? 0 : it->second;
}
int ZappaticReport::s(int n) const {
  auto it = s_counts.find(n);
  return it == s_counts.end() ? 0 : it->second;
}
int ZappaticReport::f(int n) const {
  auto it = f_counts.find(n);
  return it == f_counts.end() ? 0 : it->second;
}

ZappaticReport zappatic_report(const Arrangement& arr) {
  ZappaticReport rep;
  rep.incidence = compute_incidence(arr);
  const auto& inc = rep.incidence;

  // A line shared by three planes is not a normal crossing.
  for (std::size_t a = 0; a < inc.double_lines.size(); ++a) {
    for (std::size_t b = a + 1; b < inc.double_lines.size(); ++b) {
      if (inc.double_lines[a].line == inc.double_lines[b].line) {
        std::ostringstream os;
        os << "line shared by planes " << inc.double_lines[a].i << ", " << inc.double_lines[a].j << ", "
           << inc.double_lines[b].i << ", " << inc.double_lines[b].j;
        rep.violations.push_back(os.str());
      }
    }
  }

  for (std::size_t k = 0; k < inc.singular_points.size(); ++k) {
    SingularityType t = classify_point(arr, inc, k);
    switch (t.kind) {
      case SingularityType::Kind::R: ++rep.r_counts[t.n]; break;
      case SingularityType::Kind::S: ++rep.s_counts[t.n]; break;
      case SingularityType::Kind::E: ++rep.f_counts[t.n]; break;
      case SingularityType::Kind::NonZappatic:
        rep.violations.push_back(inc.singular_points[k].point.to_string() + ": " + t.reason);
        break;
    }
    rep.types.push_back(std::move(t));
  }
  rep.is_zappatic = rep.violations.empty();
  return rep;
}

}  // namespace zappatic
