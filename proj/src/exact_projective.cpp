#include "zappatic/exact_projective.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace zappatic {

int rref(Matrix& m) {
  if (m.empty()) return 0;
  const std::size_t cols = m.front().size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.size() && sgn(m[pivot][col]) == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    const Rat inv = 1 / m[row][col];
    for (std::size_t c = col; c < cols; ++c) m[row][c] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || sgn(m[r][col]) == 0) continue;
      const Rat factor = m[r][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= factor * m[row][c];
    }
    ++row;
  }
  m.resize(row);
  return static_cast<int>(row);
}

int rank(Matrix m) { return rref(m); }

Matrix kernel(const Matrix& m, std::size_t ncols) {
  Matrix r = m;
  rref(r);
  std::vector<int> pivot_of_col(ncols, -1);
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t c = 0; c < ncols; ++c) {
      if (sgn(r[i][c]) != 0) {
        pivot_of_col[c] = static_cast<int>(i);
        break;
      }
    }
  }
  Matrix basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    Vec v(ncols, Rat(0));
    v[free] = 1;
    for (std::size_t c = 0; c < ncols; ++c) {
      if (pivot_of_col[c] >= 0) v[c] = -r[pivot_of_col[c]][free];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

Rat dot(const Vec& a, const Vec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Matrix transpose(const Matrix& m) {
  if (m.empty()) return {};
  Matrix t(m.front().size(), Vec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.empty()) return {};
  const std::size_t inner = b.size();
  const std::size_t cols = b.empty() ? 0 : b.front().size();
  Matrix c(a.size(), Vec(cols, Rat(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (sgn(a[i][k]) == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

Vec apply(const Matrix& m, const Vec& v) {
  Vec out(m.size(), Rat(0));
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], v);
  return out;
}

Rat determinant(Matrix m) {
  const std::size_t n = m.size();
  Rat det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(m[pivot][col]) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(m[r][col]) == 0) continue;
      const Rat factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

Matrix identity(std::size_t n) {
  Matrix m(n, Vec(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix inverse(Matrix m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    m[i].resize(2 * n, Rat(0));
    m[i][n + i] = 1;
  }
  Matrix work = m;
  if (rref(work) != static_cast<int>(n)) throw GeometryError("matrix is singular");
  for (std::size_t i = 0; i < n; ++i) {
    if (work[i][i] != 1) throw GeometryError("matrix is singular");
  }
  Matrix inv(n, Vec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = work[i][n + j];
  return inv;
}

// ---------------------------------------------------------------------------

std::int64_t Sampler::uniform(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % range);
}

std::int64_t Sampler::nonzero(std::int64_t height) {
  std::int64_t x;
  do {
    x = uniform(-height, height);
  } while (x == 0);
  return x;
}

Rat Sampler::rational(std::int64_t height) {
  Rat r(static_cast<long>(uniform(-height, height)), static_cast<unsigned long>(uniform(1, height)));
  r.canonicalize();
  return r;
}

Vec Sampler::integer_vector(std::size_t n, std::int64_t height) {
  Vec v(n);
  for (auto& x : v) x = static_cast<long>(uniform(-height, height));
  return v;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  auto step = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return step(step(step(seed) ^ a) ^ (b * 0x632be59bd9b4e019ULL));
}

// ---------------------------------------------------------------------------

ProjPoint::ProjPoint(Vec coords) : coords_(std::move(coords)) {
  auto first = std::find_if(coords_.begin(), coords_.end(), [](const Rat& x) { return sgn(x) != 0; });
  if (first == coords_.end()) throw GeometryError("projective point cannot be the zero vector");
  const Rat scale = 1 / *first;
  for (auto& x : coords_) x *= scale;
}

bool operator<(const ProjPoint& a, const ProjPoint& b) {
  if (a.coords_.size() != b.coords_.size()) return a.coords_.size() < b.coords_.size();
  for (std::size_t i = 0; i < a.coords_.size(); ++i) {
    const int c = cmp(a.coords_[i], b.coords_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::string ProjPoint::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ':';
    os << coords_[i];
  }
  os << ')';
  return os.str();
}

ProjPoint coordinate_point(int ambient_dim, int index) {
  if (index < 0 || index > ambient_dim) throw GeometryError("coordinate index out of range");
  Vec v(ambient_dim + 1, Rat(0));
  v[index] = 1;
  return ProjPoint(std::move(v));
}

Subspace::Subspace(int ambient_dim) : ambient_dim_(ambient_dim) {
  if (ambient_dim < 0) throw GeometryError("ambient dimension must be nonnegative");
}

Subspace::Subspace(int ambient_dim, Matrix rows) : ambient_dim_(ambient_dim), basis_(std::move(rows)) {
  if (ambient_dim < 0) throw GeometryError("ambient dimension must be nonnegative");
  for (const auto& r : basis_) {
    if (static_cast<int>(r.size()) != ambient_dim + 1)
      throw GeometryError("row length does not match ambient dimension");
  }
  rref(basis_);
}

Matrix Subspace::annihilator() const { return kernel(basis_, ambient_dim_ + 1); }

bool Subspace::contains(const Vec& v) const {
  if (static_cast<int>(v.size()) != ambient_dim_ + 1) throw GeometryError("dimension mismatch");
  // Reduce v against the echelon basis.
  Vec r = v;
  for (const auto& row : basis_) {
    const auto pivot = static_cast<std::size_t>(
        std::find_if(row.begin(), row.end(), [](const Rat& x) { return sgn(x) != 0; }) - row.begin());
    if (sgn(r[pivot]) == 0) continue;
    const Rat f = r[pivot];
    for (std::size_t c = pivot; c < r.size(); ++c) r[c] -= f * row[c];
  }
  return std::all_of(r.begin(), r.end(), [](const Rat& x) { return sgn(x) == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_dim_ != ambient_dim_) throw GeometryError("dimension mismatch");
  return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const Vec& v) { return contains(v); });
}

ProjPoint Subspace::point() const {
  if (dim() != 0) throw GeometryError("subspace is not a point");
  return ProjPoint(basis_.front());
}

Subspace span(const std::vector<ProjPoint>& points, int ambient_dim) {
  Matrix rows;
  rows.reserve(points.size());
  for (const auto& p : points) {
    if (p.ambient_dim() != ambient_dim) throw GeometryError("point lies in a different ambient space");
    rows.push_back(p.coords());
  }
  return Subspace(ambient_dim, std::move(rows));
}

Subspace span(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw GeometryError("ambient dimension mismatch");
  Matrix rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return Subspace(a.ambient_dim(), std::move(rows));
}

Subspace span(const Subspace& a, const ProjPoint& p) {
  if (a.ambient_dim() != p.ambient_dim()) throw GeometryError("ambient dimension mismatch");
  Matrix rows = a.basis();
  rows.push_back(p.coords());
  return Subspace(a.ambient_dim(), std::move(rows));
}

Subspace meet(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw GeometryError("ambient dimension mismatch");
  Matrix forms = a.annihilator();
  Matrix fb = b.annihilator();
  forms.insert(forms.end(), fb.begin(), fb.end());
  return Subspace(a.ambient_dim(), kernel(forms, a.ambient_dim() + 1));
}

Subspace transform(const Matrix& m, const Subspace& s) {
  Matrix rows;
  for (const auto& r : s.basis()) rows.push_back(zappatic::apply(m, r));
  return Subspace(static_cast<int>(m.size()) - 1, std::move(rows));
}

Subspace embed(const Subspace& s, int extra) {
  Matrix rows = s.basis();
  for (auto& r : rows) r.resize(r.size() + extra, Rat(0));
  return Subspace(s.ambient_dim() + extra, std::move(rows));
}

// ---------------------------------------------------------------------------

QuadricForm::QuadricForm(Matrix symmetric) : m_(std::move(symmetric)) {
  const std::size_t n = m_.size();
  if (n == 0) throw GeometryError("quadric matrix is empty");
  bool nonzero = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (m_[i].size() != n) throw GeometryError("quadric matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (m_[i][j] != m_[j][i]) throw GeometryError("quadric matrix is not symmetric");
      nonzero = nonzero || sgn(m_[i][j]) != 0;
    }
  }
  if (!nonzero) throw GeometryError("quadric form is zero");
}

Rat QuadricForm::evaluate(const Vec& x) const { return bilinear(x, x); }

Rat QuadricForm::bilinear(const Vec& x, const Vec& y) const { return dot(x, zappatic::apply(m_, y)); }

QuadricForm QuadricForm::congruent(const Matrix& a) const {
  return QuadricForm(multiply(transpose(a), multiply(m_, a)));
}

int quadric_rank(const QuadricForm& q) { return rank(q.matrix()); }

QuadricForm klein_form() {
  Matrix m(6, Vec(6, Rat(0)));
  const Rat half(1, 2);
  m[0][5] = m[5][0] = half;
  m[1][4] = m[4][1] = -half;
  m[2][3] = m[3][2] = half;
  return QuadricForm(std::move(m));
}

namespace {

// Row of quadratic monomials x_i x_j (i <= j) evaluated at x.
Vec veronese_row(const Vec& x) {
  Vec row;
  row.reserve(x.size() * (x.size() + 1) / 2);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i; j < x.size(); ++j) row.push_back(x[i] * x[j]);
  return row;
}

}  // namespace

QuadricSystem quadrics_through(const std::vector<ProjPoint>& samples,
                               const std::vector<Subspace>& forced_subspaces, int ambient_dim) {
  const std::size_t n = static_cast<std::size_t>(ambient_dim) + 1;
  Matrix conditions;
  for (const auto& p : samples) {
    if (p.ambient_dim() != ambient_dim) throw GeometryError("sample lies in a different ambient space");
    conditions.push_back(veronese_row(p.coords()));
  }
  for (const auto& s : forced_subspaces) {
    if (s.ambient_dim() != ambient_dim) throw GeometryError("forced subspace lies in a different ambient space");
    // b_i and b_i + b_j span the degree-2 Veronese image of the subspace.
    const auto& b = s.basis();
    for (std::size_t i = 0; i < b.size(); ++i) {
      conditions.push_back(veronese_row(b[i]));
      for (std::size_t j = i + 1; j < b.size(); ++j) {
        Vec sum(n);
        for (std::size_t k = 0; k < n; ++k) sum[k] = b[i][k] + b[j][k];
        conditions.push_back(veronese_row(sum));
      }
    }
  }
  const Matrix coeffs = kernel(conditions, n * (n + 1) / 2);
  QuadricSystem out;
  out.dimension = static_cast<int>(coeffs.size()) - 1;
  for (const auto& c : coeffs) {
    Matrix m(n, Vec(n, Rat(0)));
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j, ++k) {
        if (i == j) {
          m[i][i] = c[k];
        } else {
          m[i][j] = m[j][i] = c[k] / 2;
        }
      }
    out.basis.emplace_back(std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------------------

Rat PluckerPoint::klein_relation() const {
  return coords[0] * coords[5] - coords[1] * coords[4] + coords[2] * coords[3];
}

PluckerPoint plucker(const Subspace& line) {
  if (line.ambient_dim() != 3 || line.dim() != 1) throw GeometryError("plucker() expects a line in P^3");
  const auto& u = line.basis()[0];
  const auto& v = line.basis()[1];
  static constexpr std::array<std::pair<int, int>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  PluckerPoint p;
  for (std::size_t k = 0; k < kPairs.size(); ++k) {
    const auto [i, j] = kPairs[k];
    p.coords[k] = u[i] * v[j] - u[j] * v[i];
  }
  return p;
}

Subspace dual_plane_in_klein(const Subspace& plane) {
  if (plane.ambient_dim() != 3 || plane.dim() != 2)
    throw GeometryError("dual_plane_in_klein() expects a plane in P^3");
  const auto& b = plane.basis();
  Matrix rows;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) rows.push_back(plucker(Subspace(3, {b[i], b[j]})).to_vec());
  return Subspace(5, std::move(rows));
}

}  // namespace zappatic
