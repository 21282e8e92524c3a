#pragma once

// Configurations of planes in P^r and the classification of their singular
// points as R_n, S_n, E_n or non-Zappatic.

#include "zappatic/exact_projective.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace zappatic {

struct Plane {
  Subspace subspace;
  int label = 0;
};

class Arrangement {
 public:
  explicit Arrangement(int ambient_dim) : ambient_dim_(ambient_dim) {}
  /// Throws GeometryError if a plane is not 2-dimensional, lives in another
  /// ambient space, or duplicates an earlier plane.
  Arrangement(int ambient_dim, const std::vector<Subspace>& planes);

  int ambient_dim() const { return ambient_dim_; }
  std::size_t size() const { return planes_.size(); }
  const std::vector<Plane>& planes() const { return planes_; }
  const Subspace& plane(std::size_t i) const { return planes_.at(i).subspace; }

  /// Appends a plane and returns its index.
  int add_plane(const Subspace& s);

 private:
  int ambient_dim_;
  std::vector<Plane> planes_;
};

/// Arrangement after a change of coordinates x -> m x.
Arrangement transform(const Matrix& m, const Arrangement& arr);
/// Embeds every plane into P^(r+extra) with trailing zero coordinates.
Arrangement embed(const Arrangement& arr, int extra);

using Edge = std::pair<int, int>;

struct DoubleLine {
  int i = 0, j = 0;
  Subspace line;
};

struct PointMeet {
  int i = 0, j = 0;
  ProjPoint point;
};

struct SingularPoint {
  ProjPoint point;
  std::vector<int> planes;        // every plane through the point, ascending
  std::vector<Edge> local_edges;  // double lines through the point
};

struct IncidenceData {
  std::vector<DoubleLine> double_lines;
  std::vector<PointMeet> point_meets;
  std::vector<SingularPoint> singular_points;
};

IncidenceData compute_incidence(const Arrangement& arr);

struct SingularityType {
  enum class Kind { R, S, E, NonZappatic };
  Kind kind = Kind::NonZappatic;
  int n = 0;
  std::string reason;  // only for NonZappatic
  int central = -1;    // middle plane of R3, centre of S_n, else -1

  std::string to_string() const;
  friend bool operator==(const SingularityType&, const SingularityType&) = default;
};

SingularityType classify_point(const Arrangement& arr, const IncidenceData& inc, std::size_t point_index);

struct ZappaticReport {
  bool is_zappatic = true;
  std::map<int, int> r_counts, s_counts, f_counts;
  std::vector<std::string> violations;
  IncidenceData incidence;
  std::vector<SingularityType> types;  // parallel to incidence.singular_points

  int r(int n) const;
  int s(int n) const;
  int f(int n) const;
};

ZappaticReport zappatic_report(const Arrangement& arr);

}  // namespace zappatic
