#pragma once

// Divisor-class bookkeeping for degenerations of rational normal scrolls,
// the chain feasibility search, and the Plücker duality check for
// rulings of a smooth quadric.

#include "zappatic/exact_projective.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace zappatic {

/// A move was applied to a state that does not satisfy its preconditions.
class MoveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Gluing {
  std::string label;
  std::vector<long> cls;  // class of the double curve in this component's basis
  int neighbor = -1;      // id of the component on the other side
};

/// One component of a central fibre.
///   Hirzebruch F_n: basis (C, F), C^2 = n, C.F = 1, F^2 = 0; C is the
///     positive section, so S_{a,b} is F_{b-a} with H = C + aF.
///   BlownUp: F_n blown up at a general point, basis (C, F, E), E^2 = -1.
///   Plane: basis (L), L^2 = 1.
struct FibreComponent {
  enum class Kind { Hirzebruch, BlownUp, Plane };
  Kind kind = Kind::Plane;
  int n = 0;
  int id = -1;
  std::vector<long> h;  // hyperplane class
  std::vector<Gluing> boundary;

  long intersect(const std::vector<long>& x, const std::vector<long>& y) const;
  long degree() const { return intersect(h, h); }
  std::string to_string() const;
};

using FibreState = std::vector<FibreComponent>;

long total_degree(const FibreState& s);
std::string to_string(const FibreState& s);
/// Throws std::logic_error if a gluing is one-sided or the two sides give
/// the double curve different H-degrees.
void check_gluings(const FibreState& s);

/// Balanced-scroll initial state F(n; 1, a) with a single component.
FibreState scroll_state(long a, long b);

struct LedgerMove {
  std::string name;
  std::string args;
  int group = 0;
};

struct DegenLedger {
  std::vector<FibreState> states;  // states[k+1] follows moves[k]
  std::vector<LedgerMove> moves;
  long total_degree = 0;
  int groups = 0;

  const FibreState& current() const { return states.back(); }
  /// One state per line; moves as "# move: name(args)".
  std::string serialize() const;
};

/// Elementary moves. Each appends the move and the resulting state.
class LedgerBuilder {
 public:
  explicit LedgerBuilder(FibreState initial);

  void begin_group() { ++group_; }
  int blowup_point(int id);
  int blowup_ruling(int id);
  void twist(int id, long m);  // by O(-m D)
  void type_I(int id);
  void blowdown(int id);

  const FibreState& state() const { return ledger_.current(); }
  DegenLedger finish();

 private:
  FibreComponent& at(FibreState& s, int id);
  void commit(FibreState next, std::string name, std::string args);

  DegenLedger ledger_;
  int next_id_ = 0;
  int group_ = 0;
};

/// Plane plus S_{a,b-1}: blow up a general point, twist by -V, type I,
/// then contract the (-1)-curve of the new component.
DegenLedger rat1_step(const FibreState& state);
/// Quadric plus S_{a-1,b-1}: blow up a ruling and twist by -W. Requires a > 1.
DegenLedger rat2_step(const FibreState& state);

/// Degeneration of the balanced scroll of degree d to a chain of d planes.
DegenLedger degenerate_balanced(int d);

/// Component adjacency of a state as an edge list over vector positions.
std::vector<std::pair<int, int>> adjacency(const FibreState& s);

struct Feasibility {
  bool feasible = false;
  std::vector<int> witness;  // j_1 < ... < j_a
  std::string obstruction;
};

Feasibility chain_feasible(int a, int b);

struct DualityReport {
  bool passed = false;
  int samples = 0;
  int verified = 0;
  Matrix identification;  // 3x3 map from projected Plücker points to Pi
  std::string message;
};

/// Throws GeometryError when the quadric is not smooth or Pi is tangent.
DualityReport section_duality_check(const QuadricForm& quadric, const Subspace& Pi, int n_samples);

}  // namespace zappatic
