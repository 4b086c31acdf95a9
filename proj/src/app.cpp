#include "patcover/app.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "patcover/cache.hpp"
#include "patcover/constructions.hpp"
#include "patcover/error.hpp"
#include "patcover/finite_field.hpp"
#include "patcover/fractal.hpp"
#include "patcover/geometry.hpp"
#include "patcover/plot.hpp"
#include "patcover/qr.hpp"
#include "patcover/rng.hpp"
#include "patcover/solver.hpp"

namespace patcover {

namespace {

constexpr int kSchemaVersion = 1;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

Json jdouble(double v) { return fmt(v); }

Budget parse_budget(const std::string& text, std::uint64_t nodes) {
  Budget b;
  b.max_nodes = nodes;
  std::string t = text;
  double scale = 1;
  if (t.size() > 2 && t.substr(t.size() - 2) == "ms") scale = 1e-3, t.resize(t.size() - 2);
  else if (!t.empty() && t.back() == 's') t.pop_back();
  else if (!t.empty() && t.back() == 'm') scale = 60, t.pop_back();
  char* end = nullptr;
  double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !(v > 0)) fail(ErrorCode::ConfigInvalid, "budget must be a positive duration");
  b.max_seconds = v * scale;
  if (nodes == 0) fail(ErrorCode::ConfigInvalid, "node budget must be positive");
  return b;
}

ScaleDomain parse_scales(const std::string& s) {
  if (s == "nonzero") return ScaleDomain::nonzero();
  if (s == "positive") return ScaleDomain::positive();
  auto [lo, hi] = parse_range(s);
  return ScaleDomain::range(lo, hi);
}

Json int_vecs(const std::vector<IntVec>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(v);
  return a;
}

std::string csv_line(std::initializer_list<std::string> cells) {
  std::string s;
  for (const auto& c : cells) s += (s.empty() ? "" : ",") + c;
  return s + "\n";
}

struct Artifacts {
  std::string csv;
  std::optional<std::pair<PlotTable, PlotKind>> plot;
};

struct Command {
  std::string name;
  std::string module;
  std::string anchor;
  Json inputs;
  std::function<Json(const Json& in, std::uint64_t seed, const Budget& budget)> compute;
  std::function<Artifacts(const Json& in, const Json& out)> render;
};

// ---------- solve ----------

DemandKind mode_kind(const std::string& mode) {
  if (mode == "g") return DemandKind::EveryBasepointIn;
  if (mode == "g-prime") return DemandKind::CountBasepoints;
  if (mode == "f") return DemandKind::EveryDifferenceIn;
  if (mode == "f-prime") return DemandKind::CountDifferences;
  return demand_kind_from_string(mode);
}

CoverProblem solve_problem(const Json& in, std::int64_t N) {
  auto U = parse_family(in.at("family").get<std::string>());
  Demand d{mode_kind(in.at("mode").get<std::string>()), {}, 0};
  if (d.count_type()) {
    d.count = N;
  } else {
    d.targets = Window{1, N}.enumerate(U.ring().point_dim());
  }
  std::optional<Window> w;
  if (in.contains("window") && !in.at("window").is_null()) {
    auto [lo, hi] = parse_range(in.at("window").get<std::string>());
    w = Window{lo, hi};
  }
  return {U, d, parse_scales(in.at("scales").get<std::string>()), w};
}

const char* witness_key(const CoverProblem& p) { return p.demand.difference_type() ? "difference" : "basepoint"; }
const char* witness_value(const CoverProblem& p) { return p.demand.difference_type() ? "basepoint" : "scale"; }

Json solve_compute(const Json& in, std::uint64_t, const Budget& budget) {
  if (in.contains("curve")) {
    std::vector<std::int64_t> Ns = in.at("curve").get<std::vector<std::int64_t>>();
    auto rows = exponent_curve([&](std::int64_t N) { return solve_problem(in, N); }, Ns, budget);
    Json table = Json::array();
    for (const auto& r : rows)
      table.push_back({{"N", r.N},
                       {"size", r.size},
                       {"exponent", r.exponent ? jdouble(*r.exponent) : Json()},
                       {"certified", r.certified},
                       {"error", r.error}});
    return {{"table", table}};
  }
  auto p = solve_problem(in, in.at("n").get<std::int64_t>());
  auto s = solve_min_cover(p, budget);
  Json out{{"size", s.size},
           {"certified", s.certified_optimal},
           {"status", s.status},
           {"window", s.window_used},
           {"normalization", to_json(s.normalization)},
           {"points", to_json(s.cover.points)},
           {"witnesses", witnesses_to_json(s.cover.witnesses, witness_key(p), witness_value(p))}};
  if (in.value("oracle", false)) out["oracle_size"] = brute_force_oracle(p).size;
  return out;
}

bool solve_verify(const Json& rec) {
  const auto& in = rec.at("inputs");
  const auto& out = rec.at("outputs");
  if (in.contains("curve")) return true;
  auto p = solve_problem(in, in.at("n").get<std::int64_t>());
  CoverSolution s;
  for (const auto& e : out.at("points")) s.cover.points.insert(element_from_json(e));
  s.cover.witnesses = witnesses_from_json(out.at("witnesses"), witness_key(p), witness_value(p));
  s.size = out.at("size").get<std::size_t>();
  s.normalization = BigInt(out.at("normalization").get<std::string>());
  return s.size == s.cover.points.size() && verify_solution(p, s);
}

Artifacts exponent_artifacts(const Json& table, const std::string& title, const std::string& label) {
  Artifacts a;
  a.csv = csv_line({"N", "size", "exponent", "certified"});
  PlotSeries series{label, {}, false};
  for (const auto& r : table) {
    std::string e = r.at("exponent").is_null() ? "" : r.at("exponent").get<std::string>();
    a.csv += csv_line({std::to_string(r.at("N").get<std::int64_t>()), std::to_string(r.at("size").get<std::size_t>()), e,
                       r.value("certified", true) ? "true" : "false"});
    if (!e.empty()) series.points.push_back({static_cast<double>(r.at("N").get<std::int64_t>()), std::stod(e)});
  }
  a.plot = std::pair{PlotTable{title, "N", "log size / log N", {series}, {}}, PlotKind::ExponentCurve};
  return a;
}

// ---------- construct ----------

Json construct_powers(const Json& in, std::uint64_t, const Budget&) {
  auto r = powers_of_two_cover(in.at("m").get<int>());
  return {{"B", to_json(r.B)}, {"size", r.B.size()}, {"covered", r.covered.size()},
          {"witnesses", witnesses_to_json(r.covered, "basepoint", "scale")}};
}

Json construct_tower(const Json& in, std::uint64_t, const Budget&) {
  auto st = tower_start(in.at("k").get<int>());
  Json levels = Json::array();
  bool ok = tower_invariants_hold(st);
  levels.push_back({{"level", st.level}, {"B", st.B.size()}, {"S", st.S.size()}});
  for (int l = 1; l < in.at("levels").get<int>(); ++l) {
    st = tower_step(st);
    ok = ok && tower_invariants_hold(st);
    levels.push_back({{"level", st.level}, {"B", st.B.size()}, {"S", st.S.size()}, {"t", st.t_history.back()}});
  }
  return {{"levels", levels}, {"invariants_hold", ok}, {"B", to_json(st.B)},
          {"witnesses", witnesses_to_json(st.S, "basepoint", "scale")}};
}

Json construct_translate(const Json& in, std::uint64_t seed, const Budget&) {
  auto v = parse_int_list(in.at("set").get<std::string>());
  std::set<std::int64_t> S(v.begin(), v.end());
  auto X = in.at("x").get<std::int64_t>();
  auto mode = in.at("mode").get<std::string>() == "randomized" ? TranslateMode::Randomized : TranslateMode::Greedy;
  auto T = random_translate_cover(S, X, mode, child_seed(seed, "construct-translate"));
  return {{"T", T}, {"size", T.size()}, {"bound", jdouble(translate_bound(S.size(), X))}};
}

Json construct_amplify(const Json& in, std::uint64_t, const Budget&) {
  ProjectionSystem sys;
  for (const auto& p : in.at("B")) sys.B.insert({BigInt(p.at(0).get<std::string>()), BigInt(p.at(1).get<std::string>())});
  for (const auto& s : in.at("slopes")) {
    auto t = s.get<std::string>();
    sys.slopes.push_back(t == "inf" ? Slope{} : Slope{parse_rational(t)});
  }
  std::optional<int> forced;
  if (in.contains("n")) forced = in.at("n").get<int>();
  auto r = amplify(sys, parse_rational(in.at("eps").get<std::string>()), BigInt(in.at("m").get<std::string>()), forced);
  Json sizes = Json::array(), base = Json::array();
  for (const auto& z : r.slope_sizes) sizes.push_back(to_json(z));
  for (const auto& z : r.base_slope_sizes) base.push_back(to_json(z));
  Json out{{"n", r.n}, {"t", r.t}, {"distinguished", to_json(r.distinguished)}, {"slope_sizes", sizes},
           {"base_distinguished", to_json(r.base_distinguished)}, {"base_slope_sizes", base}, {"post_holds", r.post_holds}};
  if (r.B_prime) {
    Json pts = Json::array();
    for (const auto& [x, y] : *r.B_prime) pts.push_back({to_json(x), to_json(y)});
    out["B_prime"] = pts;
  }
  return out;
}

// ---------- qr ----------

Json qr_stats(const QrCover& qc) {
  return {{"Q", qc.params.Q()},
          {"d", qc.params.d()},
          {"primes", qc.params.ps.primes},
          {"f_k", qc.params.f_k},
          {"basepoints", qc.basepoints},
          {"size", qc.cover.S.size()},
          {"fallback", qc.fallback},
          {"zero_divisor_basepoints", qc.zero_divisor},
          {"projection_sizes", qc.projection_sizes},
          {"projection_limits", qc.projection_limits},
          {"bound_shape", jdouble(qc.bound_shape)},
          {"ratio", jdouble(qc.ratio)},
          {"exponent", jdouble(qc.exponent)},
          {"counting_aside_holds", qc.params.counting_aside_holds()},
          {"verified", qc.verified}};
}

Json qr_build(const Json& in, std::uint64_t seed, const Budget&) {
  int n = in.at("n").get<int>();
  auto U = parse_tuple_list(in.at("family").get<std::string>());
  auto domain = in.value("all_residues", false) ? QrDomain::AllResidues : QrDomain::Box;
  auto params = in.contains("primes") ? make_qr_params(n, U, prime_system_from(n, in.at("primes").get<std::vector<std::int64_t>>()), domain)
                                      : qr_params_standard(n, U, domain);
  auto qc = build_qr_cover(params);
  Json out = qr_stats(qc);
  Json table = Json::array();
  const int levels = in.value("power", 1);
  for (int q = 1; q <= levels; ++q) {
    if (q == 1) {
      table.push_back({{"N", params.Q()}, {"size", qc.cover.S.size()}, {"exponent", jdouble(qc.exponent)}, {"failures", 0}});
      continue;
    }
    auto pe = power_extend(qc.cover, q, child_seed(seed, "qr-power"));
    table.push_back({{"N", pe.N}, {"size", pe.A.size()}, {"exponent", jdouble(pe.exponent)}, {"failures", pe.failures}});
  }
  out["table"] = table;
  if (in.value("emit_points", false)) out["S"] = int_vecs(qc.cover.S);
  return out;
}

Json qr_polygon(const Json& in, std::uint64_t, const Budget&) {
  auto r = rotated_polygon_cover(in.at("k").get<int>(), in.at("N").get<std::int64_t>());
  Json out = qr_stats(r.cover);
  out["vertices"] = int_vecs(r.vertices);
  out["rotation"] = r.rotation;
  out["radius"] = r.radius;
  out["distortion"] = jdouble(r.distortion);
  Json table = Json::array();
  for (const auto& row : r.table)
    table.push_back({{"q", row.q}, {"N", row.N}, {"size", jdouble(row.size)}, {"exponent", jdouble(row.exponent)}});
  out["table"] = table;
  return out;
}

Artifacts qr_artifacts(const Json& in, const Json& out) {
  Artifacts a;
  a.csv = csv_line({"N", "size", "exponent"});
  PlotSeries s{"log|A| / log N", {}, false};
  for (const auto& r : out.at("table")) {
    std::string size = r.at("size").is_string() ? r.at("size").get<std::string>() : std::to_string(r.at("size").get<std::size_t>());
    a.csv += csv_line({std::to_string(r.at("N").get<std::int64_t>()), size, r.at("exponent").get<std::string>()});
    s.points.push_back({static_cast<double>(r.at("N").get<std::int64_t>()), std::stod(r.at("exponent").get<std::string>())});
  }
  const double d = out.at("d").get<int>();
  PlotTable t{in.contains("k") ? "lattice polygon cover exponents" : "quadratic residue cover exponents", "N", "exponent", {s},
              {{"trivial exponent d", d}}};
  a.plot = std::pair{t, PlotKind::ExponentCurve};
  return a;
}

// ---------- ff ----------

Json field_cover_json(const FieldCover& c) {
  return {{"p", c.p}, {"n", c.n}, {"size", c.A.size()}, {"points", to_json(c.A)},
          {"witnesses", witnesses_to_json(c.witnesses, "basepoint", "scale")}, {"verified", verify_field_cover(c)}};
}

FieldCover field_cover_from(const Json& in, const Json& out) {
  FieldCover c;
  c.p = out.at("p").get<std::int64_t>();
  c.n = out.at("n").get<int>();
  c.U = parse_int_list(in.at("family").get<std::string>());
  for (const auto& e : out.at("points")) c.A.insert(element_from_json(e));
  c.witnesses = witnesses_from_json(out.at("witnesses"), "basepoint", "scale");
  return c;
}

Json ff_solve(const Json& in, std::uint64_t, const Budget& budget) {
  auto c = ff_min_cover(in.at("p").get<std::int64_t>(), in.at("n").get<int>(), parse_int_list(in.at("family").get<std::string>()),
                        std::nullopt, budget);
  return field_cover_json(c);
}

Json ff_product(const Json& in, std::uint64_t, const Budget& budget) {
  auto base = ff_min_cover(in.at("p").get<std::int64_t>(), 1, parse_int_list(in.at("family").get<std::string>()), std::nullopt, budget);
  auto c = product_cover(base, in.at("n").get<int>());
  Json out = field_cover_json(c);
  out["base_size"] = base.A.size();
  return out;
}

Json ff_translate(const Json& in, std::uint64_t, const Budget& budget) {
  auto p = in.at("p").get<std::int64_t>();
  int n = in.at("n").get<int>();
  auto U = parse_int_list(in.at("family").get<std::string>());
  // a cover of a coordinate box, then translates to reach all of F_p^n
  std::vector<Element> demand;
  for (const auto& x : field_points(p, n))
    if (std::all_of(x.begin(), x.end(), [&](const Rational& c) { return 2 * c < p; })) demand.push_back(x);
  auto base = ff_min_cover(p, n, U, demand, budget);
  auto t = ff_translate_cover(base);
  Json T = Json::array();
  for (const auto& e : t.T) T.push_back(to_json(e));
  Json out = field_cover_json(t.cover);
  out["T"] = T;
  out["base_size"] = base.A.size();
  out["bound"] = jdouble(field_translate_bound(p, n, base.witnesses.size()));
  return out;
}

Json ff_lift(const Json& in, std::uint64_t, const Budget& budget) {
  auto c = ff_min_cover(in.at("p").get<std::int64_t>(), in.at("n").get<int>(), parse_int_list(in.at("family").get<std::string>()),
                        std::nullopt, budget);
  auto r = lift_cover(c, parse_rational(in.at("eps").get<std::string>()));
  Json enc = Json::array();
  for (const auto& z : r.encoded) enc.push_back(to_json(z));
  return {{"lifted", int_vecs(r.A2)}, {"size", r.A2.size()}, {"size_bound_holds", r.size_bound_holds},
          {"b", to_json(r.b)}, {"encoded", enc}, {"basepoints", r.basepoints}};
}

bool ff_verify(const Json& rec) {
  if (!rec.at("outputs").contains("witnesses")) return true;
  return verify_field_cover(field_cover_from(rec.at("inputs"), rec.at("outputs")));
}

// ---------- fractal ----------

Json fractal_dim(const Json& in, std::uint64_t, const Budget&) {
  auto sys = make_digit_system(in.at("base").get<std::int64_t>(), parse_tuple_list(in.at("digits").get<std::string>()),
                               in.at("depth").get<int>());
  auto t = build_truncation(sys);
  std::vector<int> scales;
  if (in.contains("scales")) {
    auto [lo, hi] = parse_range(in.at("scales").get<std::string>());
    for (auto j = lo; j <= hi; ++j) scales.push_back(static_cast<int>(j));
  } else {
    for (int j = 1; j <= sys.depth; ++j) scales.push_back(j);
  }
  auto est = box_count_estimate(t, scales);
  std::vector<Rational> ratios(sys.digits.size(), Rational(1, static_cast<unsigned long>(sys.base)));
  Json rows = Json::array();
  for (const auto& r : est.rows) rows.push_back({{"j", r.j}, {"count", r.count}});
  return {{"points", t.numerators.size()}, {"rows", rows}, {"slope", jdouble(est.slope)},
          {"moran", jdouble(moran_dimension(ratios))}, {"osc_certified", sys.osc_certified()}};
}

Artifacts fractal_artifacts(const Json& in, const Json& out) {
  Artifacts a;
  a.csv = csv_line({"j", "inverse_epsilon", "count"});
  const double N = static_cast<double>(in.at("base").get<std::int64_t>());
  PlotSeries s{"box counts", {}, false};
  for (const auto& r : out.at("rows")) {
    int j = r.at("j").get<int>();
    a.csv += csv_line({std::to_string(j), fmt(std::pow(N, j)), std::to_string(r.at("count").get<std::size_t>())});
    s.points.push_back({std::pow(N, j), static_cast<double>(r.at("count").get<std::size_t>())});
  }
  PlotTable t{"box counting, slope " + out.at("slope").get<std::string>() + ", Moran " + out.at("moran").get<std::string>(),
              "1/epsilon", "N(epsilon)", {s}, {}};
  a.plot = std::pair{t, PlotKind::LogLog};
  return a;
}

Json fractal_moran(const Json& in, std::uint64_t, const Budget&) {
  return {{"dimension", jdouble(moran_dimension(parse_rational_list(in.at("ratios").get<std::string>())))}};
}

// ---------- geom ----------

PolytopeSpec shape_from(const Json& in) {
  if (in.contains("polytope")) return polytope_from_json(in.at("polytope"));
  auto s = in.at("shape").get<std::string>();
  if (s == "square") return square();
  if (s == "diamond") return diamond();
  auto colon = s.find(':');
  if (colon != std::string::npos) {
    int v = static_cast<int>(to_int64(parse_rational(s.substr(colon + 1))));
    if (s.substr(0, colon) == "polygon") return harmonic_polygon(v);
    if (s.substr(0, colon) == "simplex") return simplex(v);
  }
  fail(ErrorCode::ConfigInvalid, "unknown shape '" + s + "'");
}

Json geom_bounds(const Json& in, std::uint64_t, const Budget&) {
  auto P = shape_from(in);
  auto kind = in.value("kind", std::string("h")) == "g" ? BoundKind::GType : BoundKind::HType;
  std::vector<Rational> dir{1};
  if (in.contains("line_slope")) {
    Rational s = parse_rational(in.at("line_slope").get<std::string>());
    if (s != 0) dir = {1, s};
  }
  auto b = dimension_bounds(P, kind, BoundsRegistry::standard(), dir);
  Json out{{"lo", to_json(b.lo)}, {"hi", to_json(b.hi)}, {"lo_source", b.lo_source}, {"hi_source", b.hi_source},
           {"registry_miss", b.registry_miss}, {"faces", P.hyperplanes.size()}};
  if (b.m) out["m"] = *b.m;
  if (kind == BoundKind::HType) {
    auto fam = harmonic_index_extract(P, dir);
    Json J = Json::array();
    for (const auto& j : fam.J) J.push_back(to_json(j));
    out["J"] = J;
    out["J_offset"] = to_json(fam.offset);
    out["J_step"] = to_json(fam.step);
    out["residual"] = fam.residual;
  }
  if (b.registry_miss) fail(ErrorCode::RegistryMiss, "no registry entry for m = " + std::to_string(b.m.value_or(0)) + "; trivial bounds [" +
                                                        to_string(b.lo) + ", " + to_string(b.hi) + "]");
  return out;
}

Json geom_polygon(const Json& in, std::uint64_t, const Budget&) {
  Json rows = Json::array();
  for (auto k : in.at("k").get<std::vector<std::int64_t>>()) {
    auto r = polygon_report(static_cast<int>(k));
    Json verts = Json::array();
    for (auto [x, y] : r.vertices) verts.push_back({jdouble(x), jdouble(y)});
    rows.push_back({{"k", k},
                    {"faces", r.faces},
                    {"duplicates_removed", r.duplicates_removed},
                    {"hausdorff", jdouble(r.hausdorff)},
                    {"max_vertex_norm_sq", {to_json(r.max_vertex_norm_sq.a), to_json(r.max_vertex_norm_sq.q), to_json(r.max_vertex_norm_sq.b)}},
                    {"vertices", verts}});
  }
  return {{"polygons", rows}};
}

Artifacts geom_polygon_artifacts(const Json&, const Json& out) {
  Artifacts a;
  a.csv = csv_line({"k", "faces", "hausdorff"});
  PlotTable t{"harmonic polygons and the unit circle", "x", "y", {}, {}};
  for (const auto& r : out.at("polygons")) {
    a.csv += csv_line({std::to_string(r.at("k").get<int>()), std::to_string(r.at("faces").get<std::size_t>()),
                       r.at("hausdorff").get<std::string>()});
    PlotSeries s{"P_" + std::to_string(r.at("k").get<int>()), {}, true};
    for (const auto& v : r.at("vertices")) s.points.push_back({std::stod(v.at(0).get<std::string>()), std::stod(v.at(1).get<std::string>())});
    t.series.push_back(std::move(s));
  }
  a.plot = std::pair{t, PlotKind::PolygonVsCircle};
  return a;
}

Json geom_lines(const Json& in, std::uint64_t, const Budget&) {
  auto P = shape_from(in);
  Cube S;
  for (const auto& c : parse_rational_list(in.at("center").get<std::string>())) S.center.push_back(c);
  S.half_width = parse_rational(in.at("half_width").get<std::string>());
  auto setup = line_family_setup(P, S);
  Json bad = Json::array();
  for (const auto& b : setup.bad) bad.push_back({{"i", b.i}, {"j", b.j}, {"normal", to_json(Element(b.normal))}, {"avoided", b.avoided}});
  return {{"bad", bad}, {"delta", setup.delta ? to_json(*setup.delta) : Json()}, {"certified", setup.certified}};
}

// ---------- driver ----------

void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << data;
  if (!f) fail(ErrorCode::ConfigInvalid, "cannot write " + path);
}

bool verify_by_command(const Json& rec) {
  const auto cmd = rec.value("command", std::string());
  if (cmd == "solve") return solve_verify(rec);
  if (cmd.rfind("ff ", 0) == 0) return ff_verify(rec);
  return true;
}

}  // namespace

bool verify_record(const Json& record) { return record_digest_ok(record) && verify_by_command(record); }

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"patcover: exact pattern covers, constructions and dimension bounds"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 1;
  std::string budget_text = "600s";
  std::uint64_t nodes = 200'000'000;
  std::string cache_path, json_path, csv_path, svg_path;
  bool timing = false;
  app.add_option("--seed", seed, "seed for every random choice")->capture_default_str();
  app.add_option("--budget", budget_text, "wall-clock budget, e.g. 10s, 500ms, 2m")->capture_default_str();
  app.add_option("--nodes", nodes, "search node budget")->capture_default_str();
  app.add_option("--cache", cache_path, "JSONL result cache (default: $PATCOVER_CACHE)");
  app.add_option("--json", json_path, "write the result record here instead of stdout");
  app.add_option("--csv", csv_path, "write the result table as CSV");
  app.add_option("--svg,--plot", svg_path, "write a plot as SVG");
  app.add_flag("--timing", timing, "include wall-clock timing in the record");

  std::optional<Command> cmd;
  auto set = [&](Command c) { cmd = std::move(c); };

  // solve
  auto* solve = app.add_subcommand("solve", "exact minimum pattern cover");
  std::string family, mode = "g-prime", window, scales = "nonzero", curve;
  std::int64_t n_param = 0;
  bool oracle = false;
  solve->add_option("--family", family, "pattern family, e.g. 1,2 or 1/[3] or (1,1),(2,1)")->required();
  solve->add_option("--mode", mode, "g, g-prime, f or f-prime")->capture_default_str();
  solve->add_option("--n", n_param, "N")->required();
  solve->add_option("--window", window, "point window lo..hi");
  solve->add_option("--scales", scales, "lo..hi, nonzero or positive")->capture_default_str();
  solve->add_option("--curve", curve, "list of N for an exponent curve, e.g. 2,4,8");
  solve->add_flag("--oracle", oracle, "also run the brute-force oracle");
  solve->callback([&] {
    Json in{{"family", family}, {"mode", mode}, {"n", n_param}, {"scales", scales}};
    if (!window.empty()) in["window"] = window;
    if (oracle) in["oracle"] = true;
    if (!curve.empty()) in["curve"] = parse_int_list(curve);
    Command c{"solve", "cover-solver", "exact minimum U-pattern cover by branch and bound", in, solve_compute, nullptr};
    if (!curve.empty()) c.render = [](const Json&, const Json& o) { return exponent_artifacts(o.at("table"), "exact cover exponents", "log size / log N"); };
    set(c);
  });

  // construct
  auto* construct = app.add_subcommand("construct", "explicit constructions");
  construct->require_subcommand(1);
  int m_param = 8, k_param = 3, levels = 4;
  auto* c_pow = construct->add_subcommand("powers-of-two", "the set {2^i} and its 2-term patterns");
  c_pow->add_option("--m", m_param)->required();
  c_pow->callback([&] {
    set({"construct powers-of-two", "constructions", "powers of two cover for U = {1,2}", {{"m", m_param}}, construct_powers, nullptr});
  });
  auto* c_tower = construct->add_subcommand("tower", "iterated tower construction");
  c_tower->add_option("--k", k_param)->required();
  c_tower->add_option("--levels", levels)->capture_default_str();
  c_tower->callback([&] {
    set({"construct tower", "constructions", "tower of translated progression covers", {{"k", k_param}, {"levels", levels}}, construct_tower, nullptr});
  });
  std::string t_set, t_mode = "greedy";
  std::int64_t t_x = 0;
  auto* c_tr = construct->add_subcommand("translate", "translates of S covering [X]");
  c_tr->add_option("--set", t_set)->required();
  c_tr->add_option("--x", t_x)->required();
  c_tr->add_option("--mode", t_mode)->check(CLI::IsMember({"greedy", "randomized"}))->capture_default_str();
  c_tr->callback([&] {
    set({"construct translate", "constructions", "random translates covering an interval", {{"set", t_set}, {"x", t_x}, {"mode", t_mode}},
         construct_translate, nullptr});
  });
  std::string a_in, a_eps = "1/2", a_m = "2";
  int a_n = 0;
  auto* c_amp = construct->add_subcommand("amplify", "tensor-power amplification of a projection system");
  c_amp->add_option("--in", a_in, "JSON {B: [[x,y],...], slopes: [\"0\",\"inf\",...]}; default: the three point system");
  c_amp->add_option("--eps", a_eps)->capture_default_str();
  c_amp->add_option("--m", a_m)->capture_default_str();
  c_amp->add_option("--n", a_n, "force the tensor power");
  c_amp->callback([&] {
    Json sys{{"B", Json::array({{"0", "0"}, {"2", "1"}, {"1", "2"}})}, {"slopes", Json::array({"1"})}};
    if (!a_in.empty()) {
      std::ifstream f(a_in);
      if (!f) fail(ErrorCode::ConfigInvalid, "cannot read " + a_in);
      Json raw = Json::parse(f, nullptr, false);
      if (raw.is_discarded() || !raw.contains("B") || !raw.contains("slopes")) fail(ErrorCode::ConfigInvalid, "malformed system file");
      sys = Json{{"B", Json::array()}, {"slopes", Json::array()}};
      for (const auto& p : raw.at("B")) sys["B"].push_back({to_string(rational_from_json(p.at(0))), to_string(rational_from_json(p.at(1)))});
      for (const auto& s : raw.at("slopes")) sys["slopes"].push_back(s.is_string() && s.get<std::string>() == "inf" ? "inf" : to_string(rational_from_json(s)));
    }
    Json in{{"B", sys["B"]}, {"slopes", sys["slopes"]}, {"eps", a_eps}, {"m", a_m}};
    if (a_n > 0) in["n"] = a_n;
    set({"construct amplify", "constructions", "tensor power amplification of projections", in, construct_amplify, nullptr});
  });

  // qr
  auto* qr = app.add_subcommand("qr", "quadratic residue construction");
  qr->require_subcommand(1);
  int q_n = 2, q_power = 1, q_k = 4;
  std::string q_family, q_primes;
  bool q_all = false, q_points = false;
  double q_N = 1e6;
  auto* q_build = qr->add_subcommand("build", "build and verify S");
  q_build->add_option("--n", q_n, "2 (integers) or 4 (Gaussian integers)")->check(CLI::IsMember({2, 4}))->capture_default_str();
  q_build->add_option("--family", q_family, "1,2,3 or (1,1),(2,1)")->required();
  q_build->add_option("--primes", q_primes, "explicit primes; default q_f..q_2f");
  q_build->add_option("--power", q_power, "powering levels for the exponent table")->capture_default_str();
  q_build->add_flag("--all-residues", q_all, "serve every residue digit (needed for powering)");
  q_build->add_flag("--emit-points", q_points, "include S in the record");
  q_build->callback([&] {
    Json in{{"n", q_n}, {"family", q_family}, {"power", q_power}, {"all_residues", q_all || q_power > 1}, {"emit_points", q_points}};
    if (!q_primes.empty()) in["primes"] = parse_int_list(q_primes);
    set({"qr build", "qr-construction", "quadratic residue scaling via CRT", in, qr_build, qr_artifacts});
  });
  auto* q_poly = qr->add_subcommand("polygon", "lattice polygon vertex family");
  q_poly->add_option("--k", q_k)->required();
  q_poly->add_option("--N", q_N)->capture_default_str();
  q_poly->callback([&] {
    set({"qr polygon", "qr-construction", "scaled and rotated lattice polygon vertices", {{"k", q_k}, {"N", static_cast<std::int64_t>(q_N)}}, qr_polygon, qr_artifacts});
  });

  // ff
  auto* ff = app.add_subcommand("ff", "finite field covers");
  ff->require_subcommand(1);
  std::int64_t f_p = 5;
  int f_n = 1;
  std::string f_family, f_eps = "1/2";
  auto field_opts = [&](CLI::App* s, bool with_n) {
    s->add_option("--p", f_p)->required();
    if (with_n) s->add_option("--n", f_n)->capture_default_str();
    s->add_option("--family", f_family)->required();
  };
  auto* f_solve = ff->add_subcommand("solve", "exact minimum cover of F_p^n");
  field_opts(f_solve, true);
  f_solve->callback([&] {
    set({"ff solve", "finite-field", "exact U-pattern cover of F_p^n", {{"p", f_p}, {"n", f_n}, {"family", f_family}}, ff_solve, nullptr});
  });
  auto* f_prod = ff->add_subcommand("product", "product of a one-dimensional cover");
  field_opts(f_prod, true);
  f_prod->callback([&] {
    set({"ff product", "finite-field", "coordinatewise product cover", {{"p", f_p}, {"n", f_n}, {"family", f_family}}, ff_product, nullptr});
  });
  auto* f_tr = ff->add_subcommand("translate", "translates of a box cover");
  field_opts(f_tr, true);
  f_tr->callback([&] {
    set({"ff translate", "finite-field", "translates of a partial field cover", {{"p", f_p}, {"n", f_n}, {"family", f_family}}, ff_translate, nullptr});
  });
  auto* f_lift = ff->add_subcommand("lift", "lift a field cover to the integers");
  field_opts(f_lift, true);
  f_lift->add_option("--eps", f_eps)->capture_default_str();
  f_lift->callback([&] {
    set({"ff lift", "finite-field", "lift of a field cover to Z^n and Z", {{"p", f_p}, {"n", f_n}, {"family", f_family}, {"eps", f_eps}}, ff_lift, nullptr});
  });

  // fractal
  auto* fr = app.add_subcommand("fractal", "digit attractors");
  fr->require_subcommand(1);
  std::int64_t fr_base = 2;
  std::string fr_digits, fr_scales, fr_ratios;
  int fr_depth = 6;
  auto* fr_dim = fr->add_subcommand("dim", "box counting against the Moran dimension");
  fr_dim->add_option("--base", fr_base)->required();
  fr_dim->add_option("--digits", fr_digits, "0,2,4 or (0,0),(1,0)")->required();
  fr_dim->add_option("--depth", fr_depth)->capture_default_str();
  fr_dim->add_option("--scales", fr_scales, "j range lo..hi");
  fr_dim->callback([&] {
    Json in{{"base", fr_base}, {"digits", fr_digits}, {"depth", fr_depth}};
    if (!fr_scales.empty()) in["scales"] = fr_scales;
    set({"fractal dim", "fractal-dim", "digit attractor box counting and the Moran equation", in, fractal_dim, fractal_artifacts});
  });
  auto* fr_mor = fr->add_subcommand("moran", "solve sum c_i^s = 1");
  fr_mor->add_option("--ratios", fr_ratios)->required();
  fr_mor->callback([&] {
    set({"fractal moran", "fractal-dim", "Moran equation", {{"ratios", fr_ratios}}, fractal_moran, nullptr});
  });

  // geom
  auto* geom = app.add_subcommand("geom", "polytope dimension bounds");
  geom->require_subcommand(1);
  std::string g_polytope, g_shape = "square", g_slope, g_kind = "h", g_ks = "1,2,4", g_center, g_hw = "1";
  auto shape_inputs = [&]() {
    Json in;
    if (!g_polytope.empty()) {
      std::ifstream f(g_polytope);
      if (!f) fail(ErrorCode::ConfigInvalid, "cannot read " + g_polytope);
      Json raw = Json::parse(f, nullptr, false);
      if (raw.is_discarded()) fail(ErrorCode::ConfigInvalid, "malformed polytope file");
      in["polytope"] = polytope_to_json(polytope_from_json(raw));
    } else {
      in["shape"] = g_shape;
    }
    return in;
  };
  auto* g_b = geom->add_subcommand("bounds", "interval for the minimal dimension");
  g_b->add_option("--polytope", g_polytope, "polytope JSON file");
  g_b->add_option("--shape", g_shape, "square, diamond, polygon:k or simplex:n")->capture_default_str();
  g_b->add_option("--line-slope", g_slope, "slope of the centre line (h-type)");
  g_b->add_option("--kind", g_kind, "h (centres on a line) or g (centres fill the cube)")->check(CLI::IsMember({"h", "g"}))->capture_default_str();
  g_b->callback([&] {
    Json in = shape_inputs();
    in["kind"] = g_kind;
    if (!g_slope.empty()) in["line_slope"] = to_string(parse_rational(g_slope));
    set({"geom bounds", "geometry", "harmonic index transfer and the bounds registry", in, geom_bounds, nullptr});
  });
  auto* g_p = geom->add_subcommand("polygon", "harmonic polygons against the unit circle");
  g_p->add_option("--k", g_ks, "list of k")->capture_default_str();
  g_p->callback([&] {
    set({"geom polygon", "geometry", "harmonic polygons converging to the circle", {{"k", parse_int_list(g_ks)}}, geom_polygon,
         geom_polygon_artifacts});
  });
  auto* g_l = geom->add_subcommand("lines", "line family and diagonal avoidance");
  g_l->add_option("--polytope", g_polytope, "polytope JSON file");
  g_l->add_option("--shape", g_shape)->capture_default_str();
  g_l->add_option("--center", g_center, "cube centre, e.g. 3,7")->required();
  g_l->add_option("--half-width", g_hw)->capture_default_str();
  g_l->callback([&] {
    Json in = shape_inputs();
    in["center"] = g_center;
    in["half_width"] = to_string(parse_rational(g_hw));
    set({"geom lines", "geometry", "line family for homothets centred on a cube", in, geom_lines, nullptr});
  });

  // cache
  auto* cache = app.add_subcommand("cache", "inspect the result cache");
  cache->require_subcommand(1);
  auto* cache_verify = cache->add_subcommand("verify", "re-verify every record, quarantining failures");
  auto* cache_list = cache->add_subcommand("list", "list cached records");

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      int code = app.exit(e, out, err);
      return code == 0 ? 0 : exit_status(ErrorCode::ConfigInvalid);
    }
    if (cache_path.empty())
      if (const char* env = std::getenv("PATCOVER_CACHE")) cache_path = env;

    if (cache_verify->parsed() || cache_list->parsed()) {
      if (cache_path.empty()) fail(ErrorCode::ConfigInvalid, "no cache given (--cache or PATCOVER_CACHE)");
      ResultCache rc(cache_path);
      if (cache_list->parsed()) {
        std::ifstream f(cache_path);
        for (std::string line; std::getline(f, line);) {
          Json r = Json::parse(line, nullptr, false);
          if (r.is_discarded()) continue;
          out << r.value("hash", "?") << " " << r.value("command", "?") << "\n";
        }
        return 0;
      }
      auto a = rc.audit(verify_by_command);
      out << Json{{"records", a.records}, {"valid", a.valid}, {"quarantined", a.quarantined}}.dump(2) << "\n";
      if (a.quarantined > 0)
        fail(ErrorCode::CacheCorrupt, std::to_string(a.quarantined) + " record(s) moved to " + rc.quarantine_path().string());
      return 0;
    }
    if (!cmd) fail(ErrorCode::ConfigInvalid, "no command");

    const Budget budget = parse_budget(budget_text, nodes);
    const std::string hash = problem_hash(cmd->name, cmd->inputs, seed);
    const auto start = std::chrono::steady_clock::now();

    std::optional<Json> record;
    std::optional<ResultCache> rc;
    if (!cache_path.empty()) {
      rc.emplace(cache_path);
      auto hit = rc->lookup(hash, verify_by_command);
      if (hit.quarantined > 0)
        err << "note: " << hit.quarantined << " stale cache record(s) moved to " << rc->quarantine_path().string() << "\n";
      if (hit.record) {
        record = *hit.record;
        record->erase("cached_at");
      }
    }
    if (!record) {
      Json outputs = cmd->compute(cmd->inputs, seed, budget);
      record = seal_record({{"schema_version", kSchemaVersion},
                            {"hash", hash},
                            {"command", cmd->name},
                            {"inputs", cmd->inputs},
                            {"seed", seed},
                            {"outputs", outputs},
                            {"provenance", {{"module", cmd->module}, {"anchor", cmd->anchor}}}});
      if (rc) rc->append(*record);
    }
    Json shown = *record;
    if (timing)
      shown["timing"] = {{"seconds", jdouble(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count())}};

    std::string text = shown.dump(2) + "\n";
    if (json_path.empty()) out << text;
    else write_file(json_path, text);

    if (!csv_path.empty() || !svg_path.empty()) {
      if (!cmd->render) fail(ErrorCode::EmptyTable, "command '" + cmd->name + "' has no table to emit");
      Artifacts a = cmd->render(record->at("inputs"), record->at("outputs"));
      if (!csv_path.empty()) write_file(csv_path, a.csv);
      if (!svg_path.empty()) {
        if (!a.plot) fail(ErrorCode::EmptyTable, "nothing to plot");
        write_file(svg_path, emit_plot(a.plot->first, a.plot->second));
      }
    }
    if (record->at("outputs").value("status", "") == "budget_exhausted") {
      err << "budget exhausted: the reported cover is an incumbent, not certified optimal\n";
      return exit_status(ErrorCode::BudgetExhausted);
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_status(e.code());
  } catch (const Json::exception& e) {
    err << "error: ConfigInvalid: " << e.what() << "\n";
    return exit_status(ErrorCode::ConfigInvalid);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_status(ErrorCode::InvalidArgument);
  }
}

}  // namespace patcover
