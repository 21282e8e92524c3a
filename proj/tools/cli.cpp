#include "cli.hpp"

#include "zappatic/constructions.hpp"
#include "zappatic/invariants.hpp"
#include "zappatic/scroll_degen.hpp"
#include "zappatic/zappatic_complex.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace zappatic::cli {

using nlohmann::ordered_json;

namespace {

ordered_json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

mpz_class integer_from(const ordered_json& j) {
  if (j.is_number_integer()) return mpz_class(j.get<long>());
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw GeometryError("bad integer string");
    return z;
  }
  throw GeometryError("rational entries must be integers or decimal strings");
}

ordered_json counts_json(const std::map<int, int>& m) {
  ordered_json j = ordered_json::object();
  for (const auto& [n, c] : m) j[std::to_string(n)] = c;
  return j;
}

std::string counts_text(const ZappaticReport& rep) {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](char tag, const std::map<int, int>& m) {
    for (const auto& [n, c] : m) {
      if (!c) continue;
      os << (first ? "" : " ") << tag << n << "=" << c;
      first = false;
    }
  };
  emit('R', rep.r_counts);
  emit('S', rep.s_counts);
  emit('E', rep.f_counts);
  if (first) os << "no Zappatic points";
  return os.str();
}

void emit_json(std::ostream& out, const ordered_json& j) {
  out << kJsonBegin << "\n" << j.dump(2) << "\n" << kJsonEnd << "\n";
}

std::string interval_text(const Interval& i) {
  return "[" + std::to_string(i.first) + "," + std::to_string(i.second) + "]";
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ZAPPATIC_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw GeometryError("ZAPPATIC_SEED is not an unsigned integer");
    }
  }
  return 1;
}

struct Options {
  std::string family = "X";
  int d = 0, g = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string in_path, out_path, dot_path;
  bool smooth = false;
  std::vector<std::string> abstract_spec;
  int a = 0, b = 0;
  bool oracle = false;
};

ConstructionResult construct(const std::string& family, int d, int g, std::uint64_t seed) {
  if (family == "chain") return chain_planes(d);
  if (family == "cycle") return cycle_planes(d);
  if (family == "X") return build_X(d, g, seed);
  if (family == "Y") return build_Y(d, g, seed);
  if (family == "Z") return build_Z(d, g, seed);
  throw GeometryError("unknown family " + family);
}

int cmd_construct(const Options& o, std::ostream& out) {
  const std::uint64_t seed = o.seed_given ? o.seed : default_seed();
  const ConstructionResult r = construct(o.family, o.d, o.g, seed);
  const InvariantReport inv = invariants_of(r.report, r.graph);

  ordered_json meta;
  meta["family"] = o.family;
  meta["d"] = o.d;
  meta["g"] = o.g;
  meta["seed"] = seed;
  if (!o.out_path.empty()) {
    std::ofstream f(o.out_path);
    if (!f) throw GeometryError("cannot write " + o.out_path);
    f << arrangement_to_json(r.arrangement, meta).dump(2) << "\n";
  }

  out << "family " << o.family << " d=" << o.d << " g=" << o.g << " seed=" << seed << "\n";
  out << "planes=" << inv.v << " edges=" << inv.e << " ambient=P^" << r.arrangement.ambient_dim() << "\n";
  out << "R3=" << r.report.r(3) << " S4=" << r.report.s(4) << " g=" << inv.g << " chi=" << inv.chi << "\n";
  out << "p_omega=" << inv.p_omega << " K2=" << interval_text(inv.K2_interval) << "\n";
  for (const auto& note : r.discrepancies) out << "note: " << note << "\n";
  if (!o.out_path.empty()) out << "wrote " << o.out_path << "\n";

  ordered_json j;
  j["family"] = o.family;
  j["d"] = o.d;
  j["g"] = o.g;
  j["seed"] = seed;
  j["ambient_dim"] = r.arrangement.ambient_dim();
  j["is_zappatic"] = r.report.is_zappatic;
  j["planes"] = inv.v;
  j["edges"] = inv.e;
  j["r_counts"] = counts_json(inv.r_counts);
  j["s_counts"] = counts_json(inv.s_counts);
  j["f_counts"] = counts_json(inv.f_counts);
  j["sectional_genus"] = inv.g;
  j["chi"] = inv.chi;
  j["p_omega"] = inv.p_omega;
  j["K2"] = {inv.K2_interval.first, inv.K2_interval.second};
  ordered_json atts = ordered_json::array();
  for (const auto& a : r.attachments) {
    ordered_json aj;
    aj["planes"] = {a.chosen_planes.first, a.chosen_planes.second};
    aj["new_planes"] = a.new_plane_indices;
    aj["retries"] = a.retries;
    atts.push_back(aj);
  }
  j["attachments"] = atts;
  j["discrepancies"] = r.discrepancies;
  emit_json(out, j);
  return kOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const ArrangementFile f = read_arrangement(o.in_path);
  const ZappaticReport rep = zappatic_report(f.arrangement);
  const auto& pts = rep.incidence.singular_points;
  ordered_json rows = ordered_json::array();
  if (pts.empty()) {
    out << "no singular points; Zappatic: " << (rep.is_zappatic ? "yes" : "no") << "\n";
  } else {
    out << std::left << std::setw(40) << "point" << std::setw(16) << "planes" << "type\n";
    for (std::size_t k = 0; k < pts.size(); ++k) {
      std::string planes;
      for (int p : pts[k].planes) planes += (planes.empty() ? "" : ",") + std::to_string(p);
      out << std::left << std::setw(40) << pts[k].point.to_string() << std::setw(16) << planes
          << rep.types[k].to_string() << "\n";
      ordered_json row;
      row["point"] = pts[k].point.to_string();
      row["planes"] = pts[k].planes;
      row["type"] = rep.types[k].to_string();
      rows.push_back(row);
    }
    out << counts_text(rep) << "\n";
    out << "Zappatic: " << (rep.is_zappatic ? "yes" : "no") << "\n";
  }
  for (const auto& v : rep.violations) out << "violation: " << v << "\n";
  ordered_json j;
  j["planes"] = f.arrangement.size();
  j["double_lines"] = rep.incidence.double_lines.size();
  j["points"] = rows;
  j["r_counts"] = counts_json(rep.r_counts);
  j["s_counts"] = counts_json(rep.s_counts);
  j["f_counts"] = counts_json(rep.f_counts);
  j["is_zappatic"] = rep.is_zappatic;
  j["violations"] = rep.violations;
  emit_json(out, j);
  return kOk;
}

int cmd_invariants(const Options& o, std::ostream& out) {
  if (!o.abstract_spec.empty()) {
    const auto& s = o.abstract_spec;
    if (s.size() != 3 || s[0] != "torus") throw GeometryError("--abstract expects: torus N M");
    const DualGraph g = build_torus_complex(std::stoi(s[1]), std::stoi(s[2]));
    const HomologyReport h = homology(g);
    out << "v=" << g.num_vertices << " e=" << g.edges.size() << " f=" << g.two_cells.size() << "\n";
    out << "h0=" << h.h0 << " h1=" << h.h1 << " h2=" << h.h2 << " chi=" << h.euler << "\n";
    ordered_json j;
    j["v"] = g.num_vertices;
    j["e"] = g.edges.size();
    j["f"] = g.two_cells.size();
    j["homology"] = {h.h0, h.h1, h.h2};
    j["chi"] = h.euler;
    emit_json(out, j);
    return kOk;
  }
  const ArrangementFile f = read_arrangement(o.in_path);
  const ZappaticReport rep = zappatic_report(f.arrangement);
  if (!rep.is_zappatic) throw GeometryError("arrangement is not Zappatic");
  const DualGraph g = build_dual_graph(f.arrangement, rep);
  const InvariantReport inv = invariants_of(rep, g);
  out << "v=" << inv.v << " e=" << inv.e << " " << counts_text(rep) << "\n";
  out << "g=" << inv.g << " chi=" << inv.chi << " p_omega=" << inv.p_omega << " K2=" << interval_text(inv.K2_interval)
      << " k=" << interval_text(inv.k_interval) << "\n";
  ordered_json j;
  j["v"] = inv.v;
  j["e"] = inv.e;
  j["r_counts"] = counts_json(inv.r_counts);
  j["s_counts"] = counts_json(inv.s_counts);
  j["f_counts"] = counts_json(inv.f_counts);
  j["g"] = inv.g;
  j["chi"] = inv.chi;
  j["p_omega"] = inv.p_omega;
  j["k"] = {inv.k_interval.first, inv.k_interval.second};
  j["K2"] = {inv.K2_interval.first, inv.K2_interval.second};
  if (o.smooth) {
    const SmoothingInvariants s = smoothing_of(inv);
    out << "smoothing: g=" << s.g << " p_g=" << s.p_g << " chi=" << s.chi << " K2=" << interval_text(s.K2_interval)
        << "\n";
    j["smoothing"] = {{"g", s.g}, {"p_g", s.p_g}, {"chi", s.chi}, {"K2", {s.K2_interval.first, s.K2_interval.second}}};
  }
  emit_json(out, j);
  return kOk;
}

int cmd_graph(const Options& o, std::ostream& out) {
  const ArrangementFile f = read_arrangement(o.in_path);
  const ZappaticReport rep = zappatic_report(f.arrangement);
  if (!rep.is_zappatic) throw GeometryError("arrangement is not Zappatic");
  const DualGraph g = build_dual_graph(f.arrangement, rep);
  out << "vertices=" << g.num_vertices << " edges=" << g.edges.size() << " faces=" << g.two_cells.size()
      << " open_faces=" << g.open_faces.size() << " angles=" << g.angles.size() << "\n";
  if (!o.dot_path.empty()) {
    std::ofstream d(o.dot_path);
    if (!d) throw GeometryError("cannot write " + o.dot_path);
    d << to_dot(g);
    out << "wrote " << o.dot_path << "\n";
  }
  return kOk;
}

int cmd_hilbert(const Options& o, std::ostream& out) {
  const long h = hilbert_dim(o.d, o.g);
  const long c = chi_normal(o.d, o.g);
  const ParamBreakdown pb = param_breakdown(o.d, o.g);
  out << "hilbert_dim(" << o.d << "," << o.g << ") = " << h << "\n";
  out << "chi_normal = " << c << "\n";
  ordered_json terms = ordered_json::array();
  for (const auto& [label, v] : pb.terms) {
    out << "  " << std::showpos << v << std::noshowpos << "  " << label << "\n";
    terms.push_back({{"label", label}, {"count", v}});
  }
  out << "  total " << pb.total << "\n";
  if (h != c || h != pb.total) throw std::logic_error("dimension formulas disagree");
  emit_json(out, ordered_json{{"d", o.d}, {"g", o.g}, {"hilbert_dim", h}, {"chi_normal", c},
                              {"breakdown", terms}, {"total", pb.total}});
  return kOk;
}

int cmd_degenerate(const Options& o, std::ostream& out) {
  const DegenLedger L = degenerate_balanced(o.d);
  out << L.serialize();
  const auto& fin = L.current();
  bool all_planes = true;
  for (const auto& c : fin) all_planes = all_planes && c.kind == FibreComponent::Kind::Plane && c.degree() == 1;
  DualGraph g;
  g.num_vertices = static_cast<int>(fin.size());
  g.edges = adjacency(fin);
  const HomologyReport h = homology(g);
  const bool path = all_planes && h.h0 == 1 && h.h1 == 0 && static_cast<int>(g.edges.size()) == g.num_vertices - 1;
  out << "components=" << fin.size() << " degree=" << L.total_degree << " moves=" << L.moves.size()
      << " groups=" << L.groups << " chain_of_planes=" << (path ? "yes" : "no") << "\n";
  emit_json(out, ordered_json{{"d", o.d},
                              {"components", fin.size()},
                              {"degree", L.total_degree},
                              {"moves", L.moves.size()},
                              {"groups", L.groups},
                              {"chain_of_planes", path}});
  return path ? kOk : kInternal;
}

int cmd_feasible(const Options& o, std::ostream& out) {
  const Feasibility f = chain_feasible(o.a, o.b);
  if (f.feasible) {
    out << "feasible: witness j =";
    for (int j : f.witness) out << " " << j;
    out << "\n";
  } else {
    out << "infeasible: " << f.obstruction << "\n";
    out << "  " << o.a + o.b - 2 << " > " << 2 * o.a + 1 << "\n";
  }
  emit_json(out, ordered_json{{"a", o.a}, {"b", o.b}, {"feasible", f.feasible}, {"witness", f.witness},
                              {"obstruction", f.obstruction}});
  return kOk;
}

int cmd_quadrics(const Options& o, std::ostream& out) {
  const QuadricCount q = quadric_count(o.d, o.g);
  out << "through curve: " << q.through_curve << "\n";
  out << "through curve and codim-3 subspace: " << q.through_curve_and_codim3 << "\n";
  ordered_json j{{"d", o.d}, {"g", o.g}, {"through_curve", q.through_curve},
                 {"through_curve_and_codim3", q.through_curve_and_codim3}};
  int code = kOk;
  if (o.oracle) {
    if (o.g != 0) throw GeometryError("oracle is only available for g = 0 (rational normal curves)");
    const int r = o.d;
    std::vector<ProjPoint> samples;
    for (int t = 0; t < 2 * o.d + 2; ++t) {
      Vec v(r + 1);
      Rat pw = 1;
      for (int k = 0; k <= r; ++k) {
        v[k] = pw;
        pw *= t + 1;
      }
      samples.emplace_back(std::move(v));
    }
    const int plain = quadrics_through(samples, {}, r).dimension + 1;
    Sampler s(mix_seed(o.seed_given ? o.seed : default_seed(), 0x51));
    Subspace sub(r);
    while (sub.dim() != r - 3) {
      Matrix rows;
      for (int k = 0; k < r - 2; ++k) rows.push_back(s.integer_vector(r + 1, 31));
      sub = Subspace(r, rows);
    }
    const int forced = quadrics_through(samples, {sub}, r).dimension + 1;
    out << "formula " << q.through_curve << " = oracle " << plain << "\n";
    out << "with codim-3 subspace: formula " << q.through_curve_and_codim3 << " = oracle " << forced << "\n";
    j["oracle"] = {{"through_curve", plain}, {"through_curve_and_codim3", forced}};
    if (plain != q.through_curve || forced != q.through_curve_and_codim3) {
      out << "MISMATCH\n";
      code = kInternal;
    }
  }
  emit_json(out, j);
  return code;
}

}  // namespace

ordered_json arrangement_to_json(const Arrangement& arr, const ordered_json& metadata) {
  ordered_json j;
  j["ambient_dim"] = arr.ambient_dim();
  ordered_json planes = ordered_json::array();
  for (const auto& p : arr.planes()) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : p.subspace.basis()) {
      ordered_json r = ordered_json::array();
      for (const auto& x : row) r.push_back(ordered_json::array({integer_json(x.get_num()), integer_json(x.get_den())}));
      rows.push_back(r);
    }
    planes.push_back(rows);
  }
  j["planes"] = planes;
  j["metadata"] = metadata;
  return j;
}

ArrangementFile arrangement_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("ambient_dim") || !j.contains("planes"))
    throw GeometryError("arrangement file needs ambient_dim and planes");
  const int r = j.at("ambient_dim").get<int>();
  ArrangementFile f;
  f.arrangement = Arrangement(r);
  for (const auto& pj : j.at("planes")) {
    Matrix rows;
    for (const auto& rj : pj) {
      Vec row;
      for (const auto& xj : rj) {
        if (!xj.is_array() || xj.size() != 2) throw GeometryError("rational entries must be [num, den]");
        const mpz_class den = integer_from(xj[1]);
        if (den == 0) throw GeometryError("zero denominator");
        Rat x(integer_from(xj[0]), den);
        x.canonicalize();
        row.push_back(x);
      }
      rows.push_back(std::move(row));
    }
    if (rows.size() != 3) throw GeometryError("each plane needs three rows");
    f.arrangement.add_plane(Subspace(r, rows));
  }
  if (j.contains("metadata")) f.metadata = j.at("metadata");
  return f;
}

ArrangementFile read_arrangement(const std::string& path) {
  if (path.empty()) throw GeometryError("missing input file");
  std::ifstream in(path);
  if (!in) throw GeometryError("cannot open " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw GeometryError(std::string("malformed arrangement file: ") + e.what());
  }
  return arrangement_from_json(j);
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const GenericityError*>(&e)) return kGenericity;
  // GeometryError, RangeError and MoveError are invalid_argument.
  if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::out_of_range*>(&e)) return kInputError;
  if (dynamic_cast<const nlohmann::json::exception*>(&e)) return kInputError;
  return kInternal;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Planar Zappatic surfaces: constructions, classification, invariants"};
  app.require_subcommand(1);
  Options o;

  auto* construct = app.add_subcommand("construct", "build a family and write its arrangement");
  construct->add_option("--family", o.family, "chain|cycle|X|Y|Z")->required()
      ->check(CLI::IsMember({"chain", "cycle", "X", "Y", "Z"}));
  construct->add_option("--d", o.d, "degree")->required();
  construct->add_option("--g", o.g, "sectional genus");
  auto* seed_opt = construct->add_option("--seed", o.seed, "random seed (default: $ZAPPATIC_SEED or 1)");
  construct->add_option("--out", o.out_path, "arrangement JSON output");

  auto* classify = app.add_subcommand("classify", "classify the singular points of an arrangement");
  classify->add_option("input", o.in_path)->required();

  auto* invariants = app.add_subcommand("invariants", "invariants of an arrangement or abstract complex");
  invariants->add_option("input", o.in_path);
  invariants->add_flag("--smooth", o.smooth, "also print invariants of the smoothing");
  invariants->add_option("--abstract", o.abstract_spec, "torus N M")->expected(3);

  auto* graph = app.add_subcommand("graph", "dual graph of an arrangement");
  graph->add_option("input", o.in_path)->required();
  graph->add_option("--dot", o.dot_path, "write DOT to this file");

  auto* hilbert = app.add_subcommand("hilbert", "dimension of the scroll component");
  hilbert->add_option("--d", o.d)->required();
  hilbert->add_option("--g", o.g)->required();

  auto* degenerate = app.add_subcommand("degenerate", "degenerate the balanced rational scroll");
  degenerate->add_option("--d", o.d)->required();

  auto* feasible = app.add_subcommand("feasible", "chain feasibility for S(a,b)");
  feasible->add_option("--a", o.a)->required();
  feasible->add_option("--b", o.b)->required();

  auto* quadrics = app.add_subcommand("quadrics", "quadrics through a curve");
  quadrics->add_option("--d", o.d)->required();
  quadrics->add_option("--g", o.g)->required();
  quadrics->add_flag("--oracle", o.oracle, "compare with the kernel computation");
  auto* qseed = quadrics->add_option("--seed", o.seed);

  std::vector<std::string> args;
  for (int k = argc - 1; k >= 1; --k) args.emplace_back(argv[k]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  o.seed_given = seed_opt->count() > 0 || qseed->count() > 0;

  try {
    if (*construct) return cmd_construct(o, out);
    if (*classify) return cmd_classify(o, out);
    if (*invariants) {
      if (o.in_path.empty() && o.abstract_spec.empty()) throw GeometryError("need an input file or --abstract");
      return cmd_invariants(o, out);
    }
    if (*graph) return cmd_graph(o, out);
    if (*hilbert) return cmd_hilbert(o, out);
    if (*degenerate) return cmd_degenerate(o, out);
    if (*feasible) return cmd_feasible(o, out);
    if (*quadrics) return cmd_quadrics(o, out);
  } catch (const std::exception& e) {
    const int code = exit_code_for(e);
    err << (code == kGenericity ? "genericity: " : code == kInputError ? "error: " : "internal: ") << e.what() << "\n";
    return code;
  }
  return kInputError;
}

}  // namespace zappatic::cli
