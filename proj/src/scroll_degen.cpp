#include "zappatic/scroll_degen.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

namespace zappatic {

long FibreComponent::intersect(const std::vector<long>& x, const std::vector<long>& y) const {
  switch (kind) {
    case Kind::Plane:
      return x[0] * y[0];
    case Kind::Hirzebruch:
      return n * x[0] * y[0] + x[0] * y[1] + x[1] * y[0];
    case Kind::BlownUp:
      return n * x[0] * y[0] + x[0] * y[1] + x[1] * y[0] - x[2] * y[2];
  }
  return 0;
}

std::string FibreComponent::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Plane: os << "P(" << h[0] << ")"; break;
    case Kind::Hirzebruch: os << "F(" << n << ";" << h[0] << "," << h[1] << ")"; break;
    case Kind::BlownUp: os << "B(" << n << ";" << h[0] << "," << h[1] << "," << h[2] << ")"; break;
  }
  return os.str();
}

long total_degree(const FibreState& s) {
  long t = 0;
  for (const auto& c : s) t += c.degree();
  return t;
}

std::string to_string(const FibreState& s) {
  std::string out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out += " + ";
    out += s[k].to_string();
  }
  return out;
}

void check_gluings(const FibreState& s) {
  std::map<int, const FibreComponent*> by_id;
  for (const auto& c : s) by_id[c.id] = &c;
  for (const auto& c : s) {
    for (const auto& gl : c.boundary) {
      auto it = by_id.find(gl.neighbor);
      if (it == by_id.end()) throw std::logic_error("gluing to a missing component");
      const FibreComponent& other = *it->second;
      auto back = std::find_if(other.boundary.begin(), other.boundary.end(),
                               [&](const Gluing& g) { return g.neighbor == c.id; });
      if (back == other.boundary.end()) throw std::logic_error("one-sided gluing");
      if (c.intersect(c.h, gl.cls) != other.intersect(other.h, back->cls))
        throw std::logic_error("double curve has different degrees on its two sides");
    }
  }
}

FibreState scroll_state(long a, long b) {
  if (a < 0 || b < a) throw MoveError("scroll S(a,b) requires 0 <= a <= b");
  FibreComponent c;
  c.kind = FibreComponent::Kind::Hirzebruch;
  c.n = static_cast<int>(b - a);
  c.id = 0;
  c.h = {1, a};
  return {c};
}

std::string DegenLedger::serialize() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (k > 0) os << "# move: " << moves[k - 1].name << "(" << moves[k - 1].args << ")\n";
    os << to_string(states[k]) << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------

LedgerBuilder::LedgerBuilder(FibreState initial) {
  for (const auto& c : initial) next_id_ = std::max(next_id_, c.id + 1);
  check_gluings(initial);
  ledger_.total_degree = total_degree(initial);
  ledger_.states.push_back(std::move(initial));
}

FibreComponent& LedgerBuilder::at(FibreState& s, int id) {
  auto it = std::find_if(s.begin(), s.end(), [&](const FibreComponent& c) { return c.id == id; });
  if (it == s.end()) throw MoveError("no component c" + std::to_string(id));
  return *it;
}

namespace {

// On F_0 either ruling may play the role of C; keep a_C <= a_F.
void normalize(FibreComponent& c) {
  if (c.kind != FibreComponent::Kind::Hirzebruch || c.n != 0 || c.h[0] <= c.h[1]) return;
  std::swap(c.h[0], c.h[1]);
  for (auto& g : c.boundary) std::swap(g.cls[0], g.cls[1]);
}

Gluing* gluing_to(FibreComponent& c, int neighbor) {
  for (auto& g : c.boundary)
    if (g.neighbor == neighbor) return &g;
  return nullptr;
}

std::string cid(int id) { return "c" + std::to_string(id); }

}  // namespace

void LedgerBuilder::commit(FibreState next, std::string name, std::string args) {
  for (auto& c : next) normalize(c);
  check_gluings(next);
  if (total_degree(next) != ledger_.total_degree) throw std::logic_error("move changed the total degree");
  ledger_.moves.push_back(LedgerMove{std::move(name), std::move(args), group_});
  ledger_.states.push_back(std::move(next));
}

int LedgerBuilder::blowup_point(int id) {
  FibreState s = state();
  FibreComponent& c = at(s, id);
  if (c.kind != FibreComponent::Kind::Hirzebruch) throw MoveError("blowup_point needs a Hirzebruch component");
  c.kind = FibreComponent::Kind::BlownUp;
  c.h.push_back(0);
  for (auto& g : c.boundary) g.cls.push_back(0);
  FibreComponent v;
  v.kind = FibreComponent::Kind::Plane;
  v.id = next_id_++;
  v.h = {0};
  v.boundary.push_back(Gluing{"L", {1}, id});
  c.boundary.push_back(Gluing{"E", {0, 0, 1}, v.id});
  const auto pos = std::find_if(s.begin(), s.end(), [&](const FibreComponent& x) { return x.id == id; }) - s.begin();
  s.insert(s.begin() + pos + 1, v);
  const int vid = v.id;
  commit(std::move(s), "blowup_point", cid(id));
  return vid;
}

int LedgerBuilder::blowup_ruling(int id) {
  FibreState s = state();
  FibreComponent& c = at(s, id);
  if (c.kind != FibreComponent::Kind::Hirzebruch) throw MoveError("blowup_ruling needs a Hirzebruch component");
  FibreComponent w;
  w.kind = FibreComponent::Kind::Hirzebruch;
  w.n = 0;
  w.id = next_id_++;
  w.h = {0, c.intersect(c.h, {0, 1})};
  w.boundary.push_back(Gluing{"A", {1, 0}, id});
  c.boundary.push_back(Gluing{"F", {0, 1}, w.id});
  const auto pos = std::find_if(s.begin(), s.end(), [&](const FibreComponent& x) { return x.id == id; }) - s.begin();
  s.insert(s.begin() + pos + 1, w);
  const int wid = w.id;
  commit(std::move(s), "blowup_ruling", cid(id));
  return wid;
}

void LedgerBuilder::twist(int id, long m) {
  if (m == 0) return;
  FibreState s = state();
  FibreComponent& d = at(s, id);
  const std::vector<Gluing> boundary = d.boundary;
  for (const auto& g : boundary) {
    for (std::size_t k = 0; k < d.h.size(); ++k) d.h[k] += m * g.cls[k];
    FibreComponent& nb = at(s, g.neighbor);
    const Gluing* back = gluing_to(nb, id);
    for (std::size_t k = 0; k < nb.h.size(); ++k) nb.h[k] -= m * back->cls[k];
  }
  commit(std::move(s), "twist", cid(id) + "," + std::to_string(-m));
}

void LedgerBuilder::type_I(int id) {
  FibreState s = state();
  FibreComponent& c = at(s, id);
  if (c.kind != FibreComponent::Kind::BlownUp) throw MoveError("type_I needs a blown-up component");
  const long x = c.h[0], z = c.h[2];
  if (x + z != 0) throw MoveError("type_I needs H.(F-E) = 0");
  const Gluing* e = nullptr;
  for (const auto& g : c.boundary)
    if (g.cls == std::vector<long>{0, 0, 1}) e = &g;
  if (!e) throw MoveError("type_I needs the exceptional curve glued to a plane");
  FibreComponent& v = at(s, e->neighbor);
  if (v.kind != FibreComponent::Kind::Plane || v.boundary.size() != 1) throw MoveError("type_I needs a plane on E");

  // Contract the (-1)-curve F-E: F_n -> F_{n-1} (F_0 -> F_1), with
  // push-forward C -> C+F (C for n = 0), F -> F, E -> F.
  const int n = c.n;
  auto push = [n](const std::vector<long>& k) -> std::vector<long> {
    if (n == 0) return {k[0], k[1] + k[2]};
    return {k[0], k[0] + k[1] + k[2]};
  };
  c.kind = FibreComponent::Kind::Hirzebruch;
  c.n = n == 0 ? 1 : n - 1;
  c.h = push(c.h);
  for (auto& g : c.boundary) {
    g.cls = push(g.cls);
    if (g.label == "E") g.label = "F'";
  }
  // The plane is blown up at the point where F-E meets it and becomes F_1.
  v.kind = FibreComponent::Kind::Hirzebruch;
  v.n = 1;
  v.h = {v.h[0], 0};
  v.boundary[0].cls = {0, 1};
  v.boundary[0].label = "F'";
  commit(std::move(s), "type_I", cid(id));
}

void LedgerBuilder::blowdown(int id) {
  FibreState s = state();
  FibreComponent& c = at(s, id);
  if (c.kind != FibreComponent::Kind::Hirzebruch || c.n != 1 || c.h[1] != 0)
    throw MoveError("blowdown needs F(1;x,0)");
  c.kind = FibreComponent::Kind::Plane;
  c.n = 0;
  c.h = {c.h[0]};
  for (auto& g : c.boundary) {
    g.cls = {g.cls[0] + g.cls[1]};
    g.label = "L";
  }
  commit(std::move(s), "blowdown", cid(id));
}

DegenLedger LedgerBuilder::finish() {
  ledger_.groups = group_;
  return ledger_;
}

// ---------------------------------------------------------------------------

namespace {

std::optional<int> find_scroll(const FibreState& s, long min_a) {
  for (const auto& c : s) {
    if (c.kind == FibreComponent::Kind::Hirzebruch && c.h[0] == 1 && c.h[1] >= min_a) return c.id;
  }
  return std::nullopt;
}

bool is_plane_F1(const FibreComponent& c) {
  return c.kind == FibreComponent::Kind::Hirzebruch && c.n == 1 && c.h[1] == 0;
}

void blowdown_planes(LedgerBuilder& b) {
  std::vector<int> ids;
  for (const auto& c : b.state())
    if (is_plane_F1(c)) ids.push_back(c.id);
  for (int id : ids) b.blowdown(id);
}

}  // namespace

DegenLedger rat1_step(const FibreState& state) {
  const auto k = find_scroll(state, 1);
  if (!k) throw MoveError("no scroll component S(a,b) with a >= 1");
  LedgerBuilder b(state);
  b.begin_group();
  const int v = b.blowup_point(*k);
  b.twist(v, 1);
  b.type_I(*k);
  b.blowdown(v);
  for (const auto& c : b.state())
    if (c.id == *k && is_plane_F1(c)) b.blowdown(*k);
  return b.finish();
}

DegenLedger rat2_step(const FibreState& state) {
  const auto k = find_scroll(state, 1);
  if (!k) throw MoveError("no scroll component S(a,b)");
  long a = 0;
  for (const auto& c : state)
    if (c.id == *k) a = c.h[1];
  if (a <= 1) throw MoveError("requires b >= a > 1");
  LedgerBuilder b(state);
  b.begin_group();
  const int w = b.blowup_ruling(*k);
  b.twist(w, 1);
  return b.finish();
}

DegenLedger degenerate_balanced(int d) {
  if (d < 2) throw MoveError("requires d >= 2");
  const long a0 = d / 2;
  LedgerBuilder b(d % 2 ? scroll_state(a0, a0 + 1) : scroll_state(a0, a0));
  int scroll = 0;
  long a = a0;

  // Split off a plane and the next balanced scroll from the F_0 component w.
  auto split = [&](int w, long a_cur) {
    const int v = b.blowup_point(w);
    b.twist(v, 1);
    b.type_I(w);
    b.twist(v, a_cur - 1);
    return v;
  };

  if (d % 2 == 0) {
    b.begin_group();
    scroll = split(scroll, a);
    --a;
  }
  while (a >= 1) {
    b.begin_group();
    const int w = b.blowup_ruling(scroll);
    b.twist(w, a);
    scroll = split(w, a);
    --a;
  }
  blowdown_planes(b);
  return b.finish();
}

std::vector<std::pair<int, int>> adjacency(const FibreState& s) {
  std::map<int, int> pos;
  for (std::size_t k = 0; k < s.size(); ++k) pos[s[k].id] = static_cast<int>(k);
  std::vector<std::pair<int, int>> edges;
  for (std::size_t k = 0; k < s.size(); ++k) {
    for (const auto& g : s[k].boundary) {
      const int other = pos.at(g.neighbor);
      if (static_cast<int>(k) < other) edges.emplace_back(static_cast<int>(k), other);
    }
  }
  return edges;
}

// ---------------------------------------------------------------------------

Feasibility chain_feasible(int a, int b) {
  if (a < 1 || b < a) throw std::invalid_argument("requires 1 <= a <= b");
  const int top = a + b;
  Feasibility out;
  std::vector<int> js;
  std::function<bool(int)> place = [&](int k) -> bool {
    if (k == a) return js.back() >= top - 2;
    const int lo = k == 0 ? 1 : js.back() + 1;
    const int hi = std::min(top, k == 0 ? 3 : js.back() + 2);
    for (int j = lo; j <= hi; ++j) {
      js.push_back(j);
      if (place(k + 1)) return true;
      js.pop_back();
    }
    return false;
  };
  out.feasible = place(0);
  if (out.feasible) {
    out.witness = js;
  } else {
    out.obstruction = "j_a range empty (a+b-2 > 2a+1)";
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::optional<Rat> rational_sqrt(const Rat& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rat(rn, rd);
}

// Roots (alpha : beta) of a alpha^2 + 2 b alpha beta + c beta^2.
std::vector<std::pair<Rat, Rat>> binary_roots(const Rat& a, const Rat& b, const Rat& c) {
  if (sgn(a) == 0) {
    if (sgn(b) == 0) return {};
    return {{Rat(1), Rat(0)}, {-c, 2 * b}};
  }
  const auto s = rational_sqrt(b * b - a * c);
  if (!s || sgn(*s) == 0) return {};
  return {{(-b + *s) / a, Rat(1)}, {(-b - *s) / a, Rat(1)}};
}

Vec combine(const Rat& s, const Vec& u, const Rat& t, const Vec& v) {
  Vec out(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) out[k] = s * u[k] + t * v[k];
  return out;
}

Subspace tangent_plane(const QuadricForm& q, const Vec& p) {
  return Subspace(3, kernel({zappatic::apply(q.matrix(), p)}, 4));
}

// The two lines of the quadric through the point p.
std::vector<Subspace> rulings_through(const QuadricForm& q, const Vec& p) {
  const Subspace t = tangent_plane(q, p);
  std::vector<Vec> others;
  for (const auto& row : t.basis()) {
    if (span({ProjPoint(p), ProjPoint(row)}, 3).dim() == 1 && others.empty()) others.push_back(row);
  }
  for (const auto& row : t.basis()) {
    if (others.size() == 1 && Subspace(3, {p, others[0], row}).dim() == 2) others.push_back(row);
  }
  if (others.size() != 2) throw GeometryError("tangent plane degenerate");
  const Vec& u = others[0];
  const Vec& v = others[1];
  const auto roots = binary_roots(q.evaluate(u), q.bilinear(u, v), q.evaluate(v));
  std::vector<Subspace> out;
  for (const auto& [al, be] : roots) out.emplace_back(3, Matrix{p, combine(al, u, be, v)});
  return out;
}

std::optional<Vec> isotropic_point(const QuadricForm& q) {
  const Matrix& m = q.matrix();
  for (int h = 1; h <= 8; ++h) {
    for (int x0 = -h; x0 <= h; ++x0)
      for (int x1 = -h; x1 <= h; ++x1)
        for (int x2 = -h; x2 <= h; ++x2) {
          if (std::max({std::abs(x0), std::abs(x1), std::abs(x2)}) != h) continue;
          Vec x{Rat(x0), Rat(x1), Rat(x2), Rat(0)};
          // Q(x + t e3) = m33 t^2 + 2 B(x, e3) t + Q(x)
          const Rat a = m[3][3];
          const Rat b = m[0][3] * x[0] + m[1][3] * x[1] + m[2][3] * x[2];
          const Rat c = q.evaluate(x);
          if (sgn(a) == 0) {
            if (sgn(b) == 0) continue;
            x[3] = -c / (2 * b);
            return x;
          }
          const auto s = rational_sqrt(b * b - a * c);
          if (!s) continue;
          x[3] = (-b + *s) / a;
          return x;
        }
  }
  return std::nullopt;
}

// Coordinates of a point of Pi in Pi's basis.
Vec plane_coords(const Subspace& Pi, const Vec& x) {
  Matrix sys = transpose(Pi.basis());
  for (std::size_t k = 0; k < sys.size(); ++k) sys[k].push_back(-x[k]);
  const Matrix ker = kernel(sys, 4);
  if (ker.size() != 1 || sgn(ker[0][3]) == 0) throw GeometryError("point not on plane");
  Vec c(3);
  for (int k = 0; k < 3; ++k) c[k] = ker[0][k] / ker[0][3];
  return c;
}

Vec cross(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace

DualityReport section_duality_check(const QuadricForm& quadric, const Subspace& Pi, int n_samples) {
  if (quadric.ambient_dim() != 3) throw GeometryError("quadric must live in P^3");
  if (quadric_rank(quadric) != 4) throw GeometryError("quadric is not smooth");
  if (Pi.ambient_dim() != 3 || Pi.dim() != 2) throw GeometryError("Pi must be a plane of P^3");
  if (n_samples < 6) throw GeometryError("need at least 6 samples");
  const Matrix B = transpose(Pi.basis());
  if (rank(multiply(transpose(B), multiply(quadric.matrix(), B))) != 3) throw GeometryError("Pi contains a ruling");

  const auto p = isotropic_point(quadric);
  if (!p) throw GeometryError("no rational point found on the quadric");
  const auto through_p = rulings_through(quadric, *p);
  if (through_p.size() != 2) throw GeometryError("rulings are not rational");
  const Subspace& L0 = through_p[0];
  const Subspace& L0b = through_p[1];

  // A second line of the family of L0b, through another point of L0.
  Vec r;
  for (const auto& row : L0.basis())
    if (ProjPoint(row) != ProjPoint(*p)) r = row;
  if (r.empty()) r = combine(1, L0.basis()[0], 1, L0.basis()[1]);
  Subspace M(3);
  for (const auto& l : rulings_through(quadric, r))
    if (!l.contains(*p)) M = l;
  if (M.dim() != 1) throw GeometryError("could not find a second ruling");

  Vec w;
  for (const auto& row : L0b.basis())
    if (ProjPoint(row) != ProjPoint(*p)) w = row;

  const Subspace dual = dual_plane_in_klein(Pi);
  const Matrix proj = dual.annihilator();

  std::vector<Vec> xs, qs;
  for (int t = 1; static_cast<int>(xs.size()) < n_samples && t < 10 * n_samples; ++t) {
    const Vec y = combine(1, w, Rat(t), *p);
    const Subspace z = meet(tangent_plane(quadric, y), M);
    if (z.dim() != 0) continue;
    const Subspace line(3, Matrix{y, z.point().coords()});
    if (line.dim() != 1) continue;
    const Subspace x = meet(line, Pi);
    if (x.dim() != 0) continue;
    xs.push_back(plane_coords(Pi, x.point().coords()));
    qs.push_back(zappatic::apply(proj, plucker(line).to_vec()));
  }

  DualityReport rep;
  rep.samples = static_cast<int>(xs.size());
  if (rep.samples < n_samples) {
    rep.message = "could not draw enough rulings";
    return rep;
  }

  // x ~ M q: the three components of x cross (M q) vanish, linear in M.
  for (int start = 0; start + 4 <= rep.samples; ++start) {
    Matrix sys;
    for (int s = start; s < start + 4; ++s) {
      const Vec& x = xs[s];
      const Vec& q = qs[s];
      for (int row = 0; row < 3; ++row) {
        const int i1 = (row + 1) % 3, i2 = (row + 2) % 3;
        Vec eq(9, Rat(0));
        // (x cross Mq)_row = x[i1] (Mq)[i2] - x[i2] (Mq)[i1]
        for (int c = 0; c < 3; ++c) {
          eq[3 * i2 + c] += x[i1] * q[c];
          eq[3 * i1 + c] -= x[i2] * q[c];
        }
        sys.push_back(std::move(eq));
      }
    }
    const Matrix ker = kernel(sys, 9);
    if (ker.size() != 1) continue;
    Matrix m(3, Vec(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] = ker[0][3 * i + j];
    if (sgn(determinant(m)) == 0) continue;
    rep.identification = m;
    rep.verified = 0;
    for (int s = 0; s < rep.samples; ++s) {
      const Vec c = cross(xs[s], zappatic::apply(m, qs[s]));
      if (std::all_of(c.begin(), c.end(), [](const Rat& v) { return sgn(v) == 0; })) ++rep.verified;
    }
    rep.passed = rep.verified == rep.samples;
    rep.message = rep.passed ? "identification verified on all samples" : "identification fails on some sample";
    return rep;
  }
  rep.message = "degenerate sample set";
  return rep;
}

}  // namespace zappatic
