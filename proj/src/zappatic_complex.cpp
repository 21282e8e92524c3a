#include "zappatic/zappatic_complex.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace zappatic {

int DualGraph::find_edge(int a, int b) const {
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& [x, y] = edges[k];
    if ((x == a && y == b) || (x == b && y == a)) return static_cast<int>(k);
  }
  return -1;
}

void DualGraph::validate() const {
  const int e = static_cast<int>(edges.size());
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= num_vertices || b >= num_vertices) throw std::logic_error("edge endpoint out of range");
  }
  auto check_walk = [&](const Walk& w, bool closed) {
    const std::size_t want = closed ? w.vertices.size() : w.vertices.size() - 1;
    if (w.vertices.empty() || w.edges.size() != want) throw std::logic_error("malformed walk");
    for (std::size_t k = 0; k < w.edges.size(); ++k) {
      const int id = w.edges[k];
      if (id < 0 || id >= e) throw std::logic_error("walk references a missing edge");
      const int a = w.vertices[k];
      const int b = w.vertices[(k + 1) % w.vertices.size()];
      const auto& [x, y] = edges[id];
      if (!((x == a && y == b) || (x == b && y == a))) throw std::logic_error("walk edge does not join its vertices");
    }
  };
  for (const auto& c : two_cells) check_walk(c, true);
  for (const auto& f : open_faces) check_walk(f, false);
  for (const auto& a : angles) {
    if (a.leaves.size() != a.edges.size()) throw std::logic_error("malformed angle");
    for (std::size_t k = 0; k < a.edges.size(); ++k) {
      if (a.edges[k] < 0 || a.edges[k] >= e) throw std::logic_error("angle references a missing edge");
      const auto& [x, y] = edges[a.edges[k]];
      const int l = a.leaves[k];
      if (!((x == a.center && y == l) || (x == l && y == a.center)))
        throw std::logic_error("angle edge does not meet its centre");
    }
  }
}

namespace {

std::map<int, std::vector<int>> adjacency(const std::vector<Edge>& edges) {
  std::map<int, std::vector<int>> adj;
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& [_, nb] : adj) std::sort(nb.begin(), nb.end());
  return adj;
}

// Vertex order along a path or cycle given by its edges.
std::vector<int> walk_order(const std::vector<Edge>& edges, bool closed) {
  auto adj = adjacency(edges);
  int start = adj.begin()->first;
  if (!closed) {
    for (const auto& [v, nb] : adj) {
      if (nb.size() == 1) {
        start = v;
        break;
      }
    }
  }
  std::vector<int> order{start};
  int prev = -1, cur = start;
  while (true) {
    int next = -1;
    for (int nb : adj[cur]) {
      if (nb != prev && (order.size() < 2 || nb != order.front())) {
        next = nb;
        break;
      }
    }
    if (next < 0 || std::find(order.begin(), order.end(), next) != order.end()) break;
    order.push_back(next);
    prev = cur;
    cur = next;
  }
  return order;
}

Walk make_walk(const DualGraph& g, std::vector<int> verts, bool closed) {
  Walk w;
  const std::size_t n = verts.size();
  const std::size_t ne = closed ? n : n - 1;
  for (std::size_t k = 0; k < ne; ++k) w.edges.push_back(g.find_edge(verts[k], verts[(k + 1) % n]));
  w.vertices = std::move(verts);
  return w;
}

}  // namespace

DualGraph build_dual_graph(const Arrangement& arr, const ZappaticReport& report) {
  if (!report.is_zappatic) throw GeometryError("dual graph requires a Zappatic arrangement");
  DualGraph g;
  g.num_vertices = static_cast<int>(arr.size());
  for (const auto& dl : report.incidence.double_lines) g.edges.emplace_back(dl.i, dl.j);

  for (std::size_t k = 0; k < report.types.size(); ++k) {
    const auto& t = report.types[k];
    const auto& local = report.incidence.singular_points[k].local_edges;
    switch (t.kind) {
      case SingularityType::Kind::E:
        g.two_cells.push_back(make_walk(g, walk_order(local, true), true));
        break;
      case SingularityType::Kind::R:
        g.open_faces.push_back(make_walk(g, walk_order(local, false), false));
        break;
      case SingularityType::Kind::S: {
        Angle a;
        a.center = t.central;
        for (const auto& [x, y] : local) {
          const int leaf = x == t.central ? y : x;
          a.leaves.push_back(leaf);
          a.edges.push_back(g.find_edge(t.central, leaf));
        }
        g.angles.push_back(std::move(a));
        break;
      }
      case SingularityType::Kind::NonZappatic:
        throw GeometryError("unexpected non-Zappatic point");
    }
  }
  g.validate();
  return g;
}

HomologyReport homology(const DualGraph& g) {
  const int v = g.num_vertices;
  const int e = static_cast<int>(g.edges.size());
  const int f = static_cast<int>(g.two_cells.size());

  Matrix d1(v, Vec(e, Rat(0)));
  for (int k = 0; k < e; ++k) {
    const auto& [a, b] = g.edges[k];
    if (a == b) continue;
    d1[a][k] -= 1;
    d1[b][k] += 1;
  }
  Matrix d2(e, Vec(f, Rat(0)));
  for (int c = 0; c < f; ++c) {
    const auto& w = g.two_cells[c];
    for (std::size_t k = 0; k < w.edges.size(); ++k) {
      const int a = w.vertices[k];
      d2[w.edges[k]][c] += g.edges[w.edges[k]].first == a ? 1 : -1;
    }
  }
  const int r1 = e > 0 ? rank(d1) : 0;
  const int r2 = f > 0 && e > 0 ? rank(d2) : 0;

  HomologyReport h;
  h.h0 = v - r1;
  h.h1 = e - r1 - r2;
  h.h2 = f - r2;
  h.euler = h.h0 - h.h1 + h.h2;
  return h;
}

DualGraph build_torus_complex(int n, int m) {
  if (n < 2 || m < 2) throw GeometryError("torus complex requires n, m >= 2");
  auto wrap = [](int a, int mod) { return ((a % mod) + mod) % mod; };
  auto lower = [&](int i, int j) { return 2 * (wrap(i, n) * m + wrap(j, m)); };
  auto upper = [&](int i, int j) { return lower(i, j) + 1; };

  DualGraph g;
  g.num_vertices = 2 * n * m;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      g.edges.emplace_back(lower(i, j), upper(i, j));      // diagonal
      g.edges.emplace_back(lower(i, j), upper(i, j - 1));  // horizontal side
      g.edges.emplace_back(lower(i, j), upper(i + 1, j));  // vertical side
    }
  }
  // One hexagon around each grid vertex (i, j).
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      std::vector<int> hex{lower(i, j),         upper(i, j),         lower(i - 1, j),
                           upper(i - 1, j - 1), lower(i - 1, j - 1), upper(i, j - 1)};
      g.two_cells.push_back(make_walk(g, std::move(hex), true));
    }
  }
  g.validate();
  return g;
}

DualGraph path_graph(int d) {
  DualGraph g;
  g.num_vertices = d;
  for (int i = 0; i + 1 < d; ++i) g.edges.emplace_back(i, i + 1);
  return g;
}

std::string to_dot(const DualGraph& g) {
  std::ostringstream os;
  os << "graph zappatic {\n";
  for (int v = 0; v < g.num_vertices; ++v) os << "  v" << v << ";\n";
  for (const auto& [a, b] : g.edges) {
    os << "  v" << a << " -- v" << b << " [label=\"C_{" << a << "," << b << "}\"];\n";
  }
  for (const auto& f : g.open_faces) {
    if (f.vertices.size() >= 2)
      os << "  v" << f.vertices.front() << " -- v" << f.vertices.back() << " [style=dashed];\n";
  }
  for (const auto& c : g.two_cells) {
    os << "  /* face:";
    for (int v : c.vertices) os << " v" << v;
    os << " */\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace zappatic
