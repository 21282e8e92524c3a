#pragma once

// Dual CW-complex of a planar Zappatic surface and its rational homology.

#include "zappatic/arrangement.hpp"

#include <string>
#include <vector>

namespace zappatic {

/// A closed or open walk through the graph. vertices[k] and vertices[k+1]
/// are joined by edges[k]; for a closed cell the last edge returns to
/// vertices[0].
struct Walk {
  std::vector<int> vertices;
  std::vector<int> edges;
};

struct Angle {
  int center = -1;
  std::vector<int> leaves;
  std::vector<int> edges;
};

struct DualGraph {
  int num_vertices = 0;
  std::vector<Edge> edges;          // may contain repeated pairs
  std::vector<Walk> two_cells;      // one per E_n point
  std::vector<Walk> open_faces;     // one per R_n point, closure is dashed
  std::vector<Angle> angles;        // one per S_n point

  /// Index of some edge joining a and b, or -1.
  int find_edge(int a, int b) const;
  /// Throws std::logic_error if an edge or cell references something missing.
  void validate() const;
};

struct HomologyReport {
  int h0 = 0, h1 = 0, h2 = 0;
  int euler = 0;
};

/// Requires report.is_zappatic; throws GeometryError otherwise.
DualGraph build_dual_graph(const Arrangement& arr, const ZappaticReport& report);
HomologyReport homology(const DualGraph& g);

/// Dual complex of the degeneration of an abelian surface to 2nm planes
/// arranged as a triangulated n x m torus; every singular point is E6.
DualGraph build_torus_complex(int n, int m);

/// Abstract path on d vertices (no cells).
DualGraph path_graph(int d);

std::string to_dot(const DualGraph& g);

}  // namespace zappatic
