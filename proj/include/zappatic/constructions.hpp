#pragma once

// Explicit plane configurations: chains, cycles, and the inductive
// attachments producing planar degenerations of scrolls of any genus.

#include "zappatic/arrangement.hpp"
#include "zappatic/invariants.hpp"
#include "zappatic/zappatic_complex.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zappatic {

/// Raised when no general choice was found within the retry budget.
class GenericityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultHeight = 31;
inline constexpr int kMaxRetries = 64;

struct AttachmentRecord {
  std::pair<int, int> chosen_planes{-1, -1};
  // Anchor points of the two lines; nullopt marks a free line.
  std::optional<ProjPoint> anchor1, anchor2;
  Subspace l1{0}, l2{0};
  Subspace span_Pi{0};
  Subspace container{0};  // space holding the new planes (Pi, or a P^4 for cubics)
  std::vector<int> new_plane_indices;
  std::uint64_t seed = 0;
  int retries = 0;
};

struct ConstructionResult {
  Arrangement arrangement{0};
  ZappaticReport report;
  DualGraph graph;
  std::vector<AttachmentRecord> attachments;
  std::vector<std::string> discrepancies;
};

/// Builds report and graph for an arrangement (graph left empty if the
/// arrangement is not Zappatic).
ConstructionResult analyse(Arrangement arr);

ConstructionResult chain_planes(int d);
ConstructionResult cycle_planes(int d);

ConstructionResult attach_handle(const ConstructionResult& base, int i, int j, std::uint64_t seed);

ConstructionResult build_X(int d, int g, std::uint64_t seed);
ConstructionResult build_Y(int d, int g, std::uint64_t seed);
ConstructionResult build_Z(int d, int g, std::uint64_t seed);

/// g = 1 surface obtained from chain_planes(d-2) by closing it with a
/// degenerate quadric through free lines of the two end planes.
ConstructionResult cycle_from_chain(int d, std::uint64_t seed);

struct TransversalityReport {
  bool passed = true;
  std::vector<int> offending;  // planes meeting Pi in an unexpected positive-dimensional set
  std::vector<Subspace> intersections;
};

TransversalityReport verify_transversality(const Arrangement& arr, const Subspace& Pi,
                                           const std::vector<Subspace>& expected);

/// Index of the plane that is central for an R3 point, per point; helper
/// for choosing attachment anchors. Returns (plane -> point index) pairs.
std::vector<std::pair<int, std::size_t>> r3_central_planes(const ZappaticReport& report);

/// First pair (i, j), i < j in index order, of disjoint planes each central
/// for some R3 point.
std::optional<std::pair<int, int>> first_disjoint_central_pair(const ConstructionResult& r);

}  // namespace zappatic
