#include "patcover/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "patcover/error.hpp"

namespace patcover {

Rational Hyperplane::norm_sq() const {
  Rational s = tail_norm_sq;
  for (const auto& h : head) s += h * h;
  return s;
}

void PolytopeSpec::validate(bool bounded) const {
  if (n < 1) fail(ErrorCode::InvalidArgument, "dimension must be >= 1");
  for (const auto& h : hyperplanes) {
    if (h.c <= 0) fail(ErrorCode::InvalidArgument, "hyperplane offsets must be positive");
    if (h.head.size() > static_cast<std::size_t>(n)) fail(ErrorCode::InvalidArgument, "normal has too many coordinates");
    if (h.tail_norm_sq < 0) fail(ErrorCode::InvalidArgument, "negative squared tail norm");
    if (h.tail_norm_sq != 0 && h.head.size() == static_cast<std::size_t>(n))
      fail(ErrorCode::InvalidArgument, "tail norm given but no tail coordinates remain");
    if (h.norm_sq() == 0) fail(ErrorCode::InvalidArgument, "zero normal");
  }
  if (bounded && hyperplanes.size() < static_cast<std::size_t>(n) + 1)
    fail(ErrorCode::InvalidArgument, "a bounded polytope needs at least n+1 faces");
}

PolytopeSpec square() {
  PolytopeSpec P;
  P.n = 2;
  for (auto [x, y] : {std::pair{1, 0}, {0, 1}, {-1, 0}, {0, -1}}) P.hyperplanes.push_back({{x, y}, 0, 0, 1});
  return P;
}

PolytopeSpec diamond() {
  PolytopeSpec P;
  P.n = 2;
  for (auto [x, y] : {std::pair{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}) P.hyperplanes.push_back({{x, y}, 0, 0, 1});
  return P;
}

PolytopeSpec harmonic_polygon(int k) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be >= 1");
  PolytopeSpec P;
  P.n = 2;
  for (int j = -k; j <= k; ++j) {
    Rational first(j, k);
    first.canonicalize();
    Rational tail = 1 - first * first;
    if (tail == 0) {
      P.hyperplanes.push_back({{first}, 0, 0, 1});
      continue;
    }
    P.hyperplanes.push_back({{first}, tail, 1, 1});
    P.hyperplanes.push_back({{first}, tail, -1, 1});
  }
  return P;
}

PolytopeSpec simplex(int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  PolytopeSpec P;
  P.n = n;
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> w(n, 0);
    w[i] = -1;
    P.hyperplanes.push_back({w, 0, 0, 1});
  }
  P.hyperplanes.push_back({std::vector<Rational>(n, 1), 0, 0, 1});
  return P;
}

double Surd::to_double() const { return a.get_d() + q.get_d() * std::sqrt(b.get_d()); }

namespace {

int sgn(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// sign of p + q1 sqrt(b1) + q2 sqrt(b2)
int two_surd_sign(const Rational& p, const Rational& q1, const Rational& b1, const Rational& q2, const Rational& b2) {
  int sx = surd_sign({p, q1, b1});
  int sy = (b2 == 0) ? 0 : sgn(q2);
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  // compare |p + q1 sqrt b1| with |q2| sqrt b2 by squaring
  int s = surd_sign({p * p + q1 * q1 * b1 - q2 * q2 * b2, 2 * p * q1, b1});
  return s == 0 ? 0 : (s > 0 ? sx : sy);
}

}  // namespace

int surd_sign(const Surd& x) {
  if (x.b < 0) fail(ErrorCode::InvalidArgument, "negative radicand");
  int sp = sgn(x.a);
  int sq = (x.b == 0) ? 0 : sgn(x.q);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  Rational d = x.a * x.a - x.q * x.q * x.b;
  return d == 0 ? 0 : (d > 0 ? sp : sq);
}

int surd_compare(const Surd& x, const Surd& y) { return two_surd_sign(x.a - y.a, x.q, x.b, -y.q, y.b); }

HarmonicFamily harmonic_index_extract(const PolytopeSpec& P, const std::vector<Rational>& direction) {
  P.validate(false);
  if (std::all_of(direction.begin(), direction.end(), [](const Rational& v) { return v == 0; }))
    fail(ErrorCode::InvalidArgument, "zero direction");
  std::map<Rational, std::vector<std::size_t>> by_j;
  for (std::size_t f = 0; f < P.hyperplanes.size(); ++f) {
    const auto& h = P.hyperplanes[f];
    Rational dot = 0;
    for (std::size_t i = 0; i < direction.size(); ++i) {
      if (direction[i] == 0) continue;
      if (i >= h.head.size()) fail(ErrorCode::InvalidArgument, "direction leaves the rational coordinates of a normal");
      dot += h.head[i] * direction[i];
    }
    by_j[dot / h.c].push_back(f);
  }
  std::vector<Rational> vals;
  for (const auto& [j, _] : by_j) vals.push_back(j);
  std::set<Rational> present(vals.begin(), vals.end());

  std::size_t best = 1;
  Rational best_off = vals.front(), best_step = 1;
  for (std::size_t a = 0; a < vals.size(); ++a)
    for (std::size_t b = a + 1; b < vals.size(); ++b) {
      Rational step = vals[b] - vals[a];
      std::size_t len = 2;
      for (Rational next = vals[b] + step; present.count(next); next += step) ++len;
      if (len > best) best = len, best_off = vals[a], best_step = step;
    }
  if (best < 2) fail(ErrorCode::NoHarmonicFamily, "all faces share one harmonic index");

  HarmonicFamily fam;
  fam.offset = best_off;
  fam.step = best_step;
  for (std::size_t i = 0; i < best; ++i) {
    Rational j = best_off + best_step * static_cast<long>(i);
    fam.J.push_back(j);
    fam.faces[j] = by_j[j];
  }
  for (const auto& [j, fs] : by_j)
    if (!fam.faces.count(j)) fam.residual.insert(fam.residual.end(), fs.begin(), fs.end());
  std::sort(fam.residual.begin(), fam.residual.end());
  return fam;
}

PolygonReport polygon_report(int k) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be >= 1");
  PolygonReport rep;
  rep.faces = harmonic_polygon(k).hyperplanes.size();
  rep.duplicates_removed = 2 * (2 * static_cast<std::size_t>(k) + 1) - rep.faces;

  // faces counterclockwise from angle 0: upper half j = k..-k, then lower half j = -k+1..k-1
  std::vector<std::pair<int, int>> ring;
  for (int j = k; j >= -k; --j) ring.push_back({j, (j == k || j == -k) ? 0 : 1});
  for (int j = -k + 1; j <= k - 1; ++j) ring.push_back({j, -1});

  auto unit = [&](std::pair<int, int> f) {
    double x = static_cast<double>(f.first) / k;
    return std::pair{x, f.second * std::sqrt(std::max(0.0, 1 - x * x))};
  };
  bool have = false;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    auto f = ring[i], g = ring[(i + 1) % ring.size()];
    auto [x1, y1] = unit(f);
    auto [x2, y2] = unit(g);
    double cs = x1 * x2 + y1 * y2;
    rep.vertices.push_back({(x1 + x2) / (1 + cs), (y1 + y2) / (1 + cs)});

    // exact <u_f, u_g> = a + s sqrt(b); |vertex|^2 = 2 / (1 + <u_f, u_g>)
    Rational jf(f.first, k), jg(g.first, k);
    jf.canonicalize();
    jg.canonicalize();
    Rational a = jf * jg;
    Rational b = (1 - jf * jf) * (1 - jg * jg);
    Rational s = f.second * g.second;
    Rational one_a = 1 + a;
    Surd norm;
    if (b == 0 || s == 0) {
      norm = {2 / one_a, 0, 0};
    } else {
      Rational den = one_a * one_a - b;
      if (den == 0)
        norm = {0, s / b, b};  // 2 / (2 sqrt b)
      else
        norm = {2 * one_a / den, -2 * s / den, b};
    }
    if (!have || surd_compare(norm, rep.max_vertex_norm_sq) > 0) rep.max_vertex_norm_sq = norm;
    have = true;
  }
  rep.hausdorff = std::sqrt(rep.max_vertex_norm_sq.to_double()) - 1;
  return rep;
}

BoundsRegistry BoundsRegistry::standard() {
  BoundsRegistry r;
  r.set(1, {0, 0, "single point", "single point"});
  r.set(2, {Rational(1, 2), Rational(1, 2), "trivial sumset bound", "G'_2 = O(N^(1/2)) cover transfer"});
  r.set(3, {Rational(6, 11), Rational(3, 4), "Katz-Tao 3-term inequality", "square construction of dimension 7/4"});
  r.set(4, {Rational(4, 7), Rational(3, 4), "4-term Katz-Tao inequality", "generic 1 - 1/m"});
  return r;
}

void BoundsRegistry::set(int m, BoundEntry e) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "progression length must be >= 1");
  if (e.lower > e.upper) fail(ErrorCode::InvalidArgument, "registry entry has lower > upper");
  entries_[m] = std::move(e);
}

BoundEntry BoundsRegistry::lookup(int m) const {
  if (m < 1) fail(ErrorCode::InvalidArgument, "progression length must be >= 1");
  if (auto it = entries_.find(m); it != entries_.end()) return it->second;
  if (!generic_fill) fail(ErrorCode::RegistryMiss, "no registry entry for m = " + std::to_string(m));
  BoundEntry e{0, 1 - Rational(1, m), "monotone in m", "generic 1 - 1/m"};
  for (const auto& [mm, entry] : entries_)
    if (mm < m && entry.lower > e.lower) e.lower = entry.lower, e.lower_source = entry.lower_source + " (monotone in m)";
  if (e.lower > e.upper) e.upper = 1, e.upper_source = "trivial";
  return e;
}

DimensionBounds dimension_bounds(const PolytopeSpec& P, BoundKind kind, const BoundsRegistry& reg,
                                 const std::vector<Rational>& direction) {
  const Rational n(P.n);
  DimensionBounds out;
  if (kind == BoundKind::GType) {
    P.validate(true);
    const auto faces = static_cast<long>(P.hyperplanes.size());
    out.lo = n - 1 + n / (n + 1);
    out.hi = n - Rational(1, faces);
    out.lo_source = "projection to n+1 faces, dim S = n";
    out.hi_source = "line family with m = " + std::to_string(faces) + " faces";
    out.m = P.hyperplanes.size();
    return out;
  }
  P.validate(true);
  auto fam = harmonic_index_extract(P, direction);
  out.m = fam.m();
  BoundEntry e;
  try {
    e = reg.lookup(static_cast<int>(fam.m()));
  } catch (const Error& err) {
    if (err.code() != ErrorCode::RegistryMiss) throw;
    out.lo = n - 1;
    out.hi = n;
    out.lo_source = out.hi_source = "trivial";
    out.registry_miss = true;
    return out;
  }
  out.lo = n - 1 + e.lower;
  out.lo_source = e.lower_source;
  if (fam.residual.empty()) {
    out.hi = n - 1 + e.upper;
    out.hi_source = e.upper_source;
  } else {
    out.hi = n - Rational(1, static_cast<long>(P.hyperplanes.size()));
    out.hi_source = "line family over all faces (residual faces outside the progression)";
  }
  return out;
}

std::vector<Rational> LineFamilySetup::point(const std::vector<Rational>& x, const Rational& r) const {
  std::vector<Rational> p;
  for (std::size_t i = 0; i < W.size(); ++i) {
    Rational s = r * c[i];
    for (std::size_t t = 0; t < x.size(); ++t) s += x[t] * W[i][t];
    p.push_back(s);
  }
  return p;
}

bool LineFamilySetup::off_diagonal(const std::vector<Rational>& x, const Rational& r) const {
  auto p = point(x, r);
  std::set<Rational> seen(p.begin(), p.end());
  return seen.size() == p.size();
}

namespace {

// max (sign = 1) or min (sign = -1) of <a, x> over the cube
Rational cube_extreme(const std::vector<Rational>& a, const Cube& S, int sign) {
  Rational v = 0, l1 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    v += a[i] * S.center[i];
    l1 += abs(a[i]);
  }
  return v + sign * S.half_width * l1;
}

bool positively_parallel(const std::vector<Rational>& u, const std::vector<Rational>& v) {
  std::optional<Rational> ratio;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if ((u[i] == 0) != (v[i] == 0)) return false;
    if (u[i] == 0) continue;
    Rational q = u[i] / v[i];
    if (q <= 0 || (ratio && *ratio != q)) return false;
    ratio = q;
  }
  return true;
}

}  // namespace

LineFamilySetup line_family_setup(const PolytopeSpec& P, const Cube& S) {
  P.validate(true);
  if (S.center.size() != static_cast<std::size_t>(P.n)) fail(ErrorCode::InvalidArgument, "cube centre has the wrong dimension");
  if (S.half_width <= 0) fail(ErrorCode::InvalidArgument, "cube half-width must be positive");
  LineFamilySetup out;
  for (const auto& h : P.hyperplanes) {
    if (!h.rational()) fail(ErrorCode::InvalidArgument, "line family setup needs rational normals");
    auto w = h.head;
    w.resize(P.n, 0);
    out.W.push_back(std::move(w));
    out.c.push_back(h.c);
  }
  const std::size_t m = out.W.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (positively_parallel(out.W[i], out.W[j]))
        fail(ErrorCode::DegeneratePolytope, "faces " + std::to_string(i) + " and " + std::to_string(j) + " share a normal");

  out.certified = true;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      std::vector<Rational> diff(P.n);
      for (int t = 0; t < P.n; ++t) diff[t] = out.W[i][t] - out.W[j][t];
      if (out.c[i] == out.c[j]) {
        BadPair bp{i, j, diff, false};
        bp.avoided = cube_extreme(diff, S, -1) > 0 || cube_extreme(diff, S, 1) < 0;
        out.certified = out.certified && bp.avoided;
        out.bad.push_back(std::move(bp));
      } else {
        // <x, w_i> + r c_i = <x, w_j> + r c_j  <=>  r = <x, w_j - w_i> / (c_i - c_j)
        std::vector<Rational> a(P.n);
        for (int t = 0; t < P.n; ++t) a[t] = -diff[t] / (out.c[i] - out.c[j]);
        Rational top = cube_extreme(a, S, 1);
        if (!out.delta || top > *out.delta) out.delta = top;
      }
    }
  return out;
}

}  // namespace patcover
