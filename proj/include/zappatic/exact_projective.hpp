#pragma once

// Exact rational linear algebra over projective space.
//
// Every object here is a value type over mpq_class. Subspaces are kept in
// reduced row echelon form, so two Subspace values compare equal exactly when
// they describe the same linear space.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace zappatic {

using Rat = mpq_class;
using Vec = std::vector<Rat>;
using Matrix = std::vector<Vec>;

/// Raised when an operation receives geometrically invalid input
/// (wrong dimensions, mismatched ambient spaces, zero vectors).
class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Matrix kernels

/// In-place reduced row echelon form. Returns the rank; zero rows are dropped.
int rref(Matrix& m);
int rank(Matrix m);
/// Basis of {x : m x = 0}, where m has `ncols` columns (m may have no rows).
Matrix kernel(const Matrix& m, std::size_t ncols);
Rat dot(const Vec& a, const Vec& b);
Matrix transpose(const Matrix& m);
Matrix multiply(const Matrix& a, const Matrix& b);
Vec apply(const Matrix& m, const Vec& v);
Rat determinant(Matrix m);
/// Exact inverse; throws GeometryError when singular.
Matrix inverse(Matrix m);
Matrix identity(std::size_t n);

// ---------------------------------------------------------------------------
// Deterministic sampling

/// Seeded generator for "general" choices. Uses rejection sampling on top of
/// mt19937_64 so a given seed produces identical output on every platform.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  std::int64_t nonzero(std::int64_t height);
  Rat rational(std::int64_t height);
  Vec integer_vector(std::size_t n, std::int64_t height);

 private:
  std::mt19937_64 engine_;
};

/// splitmix64-style mixing used to derive per-step seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

// ---------------------------------------------------------------------------
// Points and subspaces

class ProjPoint {
 public:
  explicit ProjPoint(Vec coords);

  const Vec& coords() const { return coords_; }
  int ambient_dim() const { return static_cast<int>(coords_.size()) - 1; }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const ProjPoint& a, const ProjPoint& b);

  std::string to_string() const;

 private:
  Vec coords_;  // scaled so the first nonzero entry is 1
};

ProjPoint coordinate_point(int ambient_dim, int index);

class Subspace {
 public:
  /// Empty subspace (projective dimension -1) of P^ambient_dim.
  explicit Subspace(int ambient_dim);
  /// Row span of `rows`; rows may be dependent.
  Subspace(int ambient_dim, Matrix rows);

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(basis_.size()) - 1; }
  bool empty() const { return basis_.empty(); }
  const Matrix& basis() const { return basis_; }

  /// Linear forms vanishing on the subspace (a basis of the annihilator).
  Matrix annihilator() const;
  bool contains(const Vec& v) const;
  bool contains(const ProjPoint& p) const { return contains(p.coords()); }
  bool contains(const Subspace& other) const;
  /// The unique point of a 0-dimensional subspace.
  ProjPoint point() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.basis_ == b.basis_;
  }

 private:
  int ambient_dim_;
  Matrix basis_;
};

Subspace span(const std::vector<ProjPoint>& points, int ambient_dim);
Subspace span(const Subspace& a, const Subspace& b);
Subspace span(const Subspace& a, const ProjPoint& p);
Subspace meet(const Subspace& a, const Subspace& b);
/// Image of a subspace under the linear map x -> m x.
Subspace transform(const Matrix& m, const Subspace& s);
/// Embeds P^r into P^(r+extra) by appending zero coordinates.
Subspace embed(const Subspace& s, int extra);

// ---------------------------------------------------------------------------
// Quadrics

class QuadricForm {
 public:
  explicit QuadricForm(Matrix symmetric);

  const Matrix& matrix() const { return m_; }
  int ambient_dim() const { return static_cast<int>(m_.size()) - 1; }
  Rat evaluate(const Vec& x) const;
  Rat bilinear(const Vec& x, const Vec& y) const;
  /// Returns A^T Q A.
  QuadricForm congruent(const Matrix& a) const;

 private:
  Matrix m_;
};

int quadric_rank(const QuadricForm& q);

/// x0*x5 - x1*x4 + x2*x3 on P^5; in Plücker order this is the Klein relation.
QuadricForm klein_form();

struct QuadricSystem {
  int dimension = -1;  // projective dimension of the linear system
  std::vector<QuadricForm> basis;
};

/// Quadratic forms vanishing on all samples and containing every forced
/// subspace. Callers must pass enough samples to cut out the intended
/// conditions (2*deg+2 parameter values for a rational curve).
QuadricSystem quadrics_through(const std::vector<ProjPoint>& samples,
                               const std::vector<Subspace>& forced_subspaces, int ambient_dim);

// ---------------------------------------------------------------------------
// Plücker geometry of lines in P^3

struct PluckerPoint {
  std::array<Rat, 6> coords;  // p01, p02, p03, p12, p13, p23

  Rat klein_relation() const;
  Vec to_vec() const { return Vec(coords.begin(), coords.end()); }
};

PluckerPoint plucker(const Subspace& line);
Subspace dual_plane_in_klein(const Subspace& plane);

}  // namespace zappatic
