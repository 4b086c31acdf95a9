#include "patcover/pattern.hpp"

#include <algorithm>

#include "patcover/error.hpp"

namespace patcover {

namespace {

void validate_family_element(const RingContext& ring, const Element& u) {
  if (static_cast<int>(u.size()) != ring.family_dim())
    fail(ErrorCode::RingMismatch, "family element " + to_string(u) + " has wrong arity for " + ring.describe());
  if (is_zero(u)) fail(ErrorCode::InvalidFamily, "family elements must be nonzero");
  if (ring.kind == RingContext::Kind::Rationals) return;
  for (const auto& c : u) {
    if (!is_integer(c)) fail(ErrorCode::InvalidFamily, to_string(u) + " is not integral");
    if (ring.kind == RingContext::Kind::Cyclotomic && c == 0)
      fail(ErrorCode::InvalidFamily, "vector family element " + to_string(u) + " has a zero coordinate");
  }
  if (ring.kind == RingContext::Kind::FiniteField && mod_floor(to_int64(u[0]), ring.p) == 0)
    fail(ErrorCode::InvalidFamily, to_string(u) + " vanishes mod " + std::to_string(ring.p));
}

}  // namespace

PatternFamily::PatternFamily(RingContext ring, std::vector<Element> elements, std::string label)
    : ring_(ring), elements_(std::move(elements)), label_(std::move(label)) {
  if (elements_.empty()) fail(ErrorCode::InvalidFamily, "pattern family is empty");
  for (const auto& u : elements_) validate_family_element(ring_, u);
  std::sort(elements_.begin(), elements_.end());
  if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end())
    fail(ErrorCode::DuplicateElements, "pattern family has repeated elements");
}

PatternFamily PatternFamily::integers(const std::vector<std::int64_t>& elements, std::string label) {
  std::vector<Element> es;
  for (auto u : elements) es.push_back(scalar(Rational(static_cast<long>(u))));
  return PatternFamily(RingContext::integers(), std::move(es), std::move(label));
}

PatternFamily PatternFamily::harmonic(int k) {
  if (k < 1) fail(ErrorCode::InvalidFamily, "k must be >= 1");
  std::vector<Element> es;
  for (int i = 1; i <= k; ++i) es.push_back(scalar(Rational(1, i)));
  return PatternFamily(RingContext::rationals(), std::move(es), "1/[" + std::to_string(k) + "]");
}

PatternFamily PatternFamily::progression(int k) {
  if (k < 1) fail(ErrorCode::InvalidFamily, "k must be >= 1");
  std::vector<Element> es;
  for (int i = 1; i <= k; ++i) es.push_back(scalar(i));
  return PatternFamily(RingContext::integers(), std::move(es), "[" + std::to_string(k) + "]");
}

Rational PatternFamily::sup_norm() const {
  Rational m = 0;
  for (const auto& u : elements_)
    for (const auto& c : u) m = std::max(m, Rational(abs(c)));
  return m;
}

bool ScaleDomain::contains(const RingContext& ring, const Element& r) const {
  if (static_cast<int>(r.size()) != ring.point_dim() || is_zero(r)) return false;
  if (ring.kind == RingContext::Kind::FiniteField) {
    for (const auto& c : r)
      if (!is_integer(c) || c < 0 || c >= ring.p) return false;
    return true;
  }
  for (const auto& c : r) {
    if (ring.kind != RingContext::Kind::Rationals && !is_integer(c)) return false;
    if (lo && c < *lo) return false;
    if (hi && c > *hi) return false;
    if (positive_only && c <= 0) return false;
  }
  return true;
}

bool ScaleDomain::finite(const RingContext& ring) const {
  if (ring.kind == RingContext::Kind::FiniteField) return true;
  if (ring.kind == RingContext::Kind::Rationals) return false;
  return hi.has_value() && (lo.has_value() || positive_only);
}

std::vector<Element> ScaleDomain::enumerate(const RingContext& ring) const {
  if (!finite(ring)) fail(ErrorCode::InvalidArgument, "scale domain " + describe() + " is not finite");
  std::int64_t a = 0, b = 0;
  if (ring.kind == RingContext::Kind::FiniteField) {
    b = ring.p - 1;
  } else {
    a = positive_only ? std::max<std::int64_t>(1, lo.value_or(1)) : *lo;
    b = *hi;
  }
  std::vector<Element> out;
  if (a > b) return out;
  const int dim = ring.point_dim();
  std::vector<std::int64_t> cur(dim, a);
  while (true) {
    Element e;
    for (auto c : cur) e.emplace_back(static_cast<long>(c));
    if (contains(ring, e)) out.push_back(std::move(e));
    int i = dim - 1;
    while (i >= 0 && cur[i] == b) cur[i--] = a;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

std::string ScaleDomain::describe() const {
  std::string s = (lo ? std::to_string(*lo) : std::string("-inf")) + ".." + (hi ? std::to_string(*hi) : std::string("inf"));
  if (positive_only) s += " (positive)";
  return s;
}

PointSet instantiate_pattern(const RingContext& ring, const Element& x, const Element& r, const PatternFamily& U) {
  if (!(ring == U.ring())) fail(ErrorCode::RingMismatch, ring.describe() + " vs " + U.ring().describe());
  return instantiate_pattern(x, r, U);
}

PointSet instantiate_pattern(const Element& x, const Element& r, const PatternFamily& U) {
  const auto& ring = U.ring();
  if (static_cast<int>(x.size()) != ring.point_dim() || static_cast<int>(r.size()) != ring.point_dim())
    fail(ErrorCode::RingMismatch, "basepoint/scale arity does not match " + ring.describe());
  Element xr = reduce(ring, x), rr = reduce(ring, r);
  if (is_zero(rr)) fail(ErrorCode::ZeroScale, "scale must be nonzero");
  PointSet out;
  for (const auto& u : U.elements()) out.insert(add(ring, xr, scale_mul(ring, rr, u)));
  return out;
}

bool pattern_inside(const PointSet& B, const Element& x, const Element& r, const PatternFamily& U) {
  if (is_zero(reduce(U.ring(), r))) return false;
  PointSet pts = instantiate_pattern(x, r, U);
  if (pts.size() != U.size()) return false;
  return std::all_of(pts.begin(), pts.end(), [&](const Element& p) { return B.count(p) > 0; });
}

std::map<Element, Element> basepoints_covered(const PointSet& B, const PatternFamily& U, const ScaleDomain& scales) {
  const auto& ring = U.ring();
  std::map<Element, Element> out;
  auto offer = [&](const Element& x, const Element& r) {
    auto it = out.find(x);
    if (it == out.end())
      out.emplace(x, r);
    else if (r < it->second)
      it->second = r;
  };
  const Element& u0 = U.elements()[0];
  if (U.size() == 1) {
    for (const auto& r : scales.enumerate(ring))
      for (const auto& b : B) {
        Element x = sub(ring, b, scale_mul(ring, r, u0));
        offer(x, r);
      }
    return out;
  }
  const Element& u1 = U.elements()[1];
  // r (u1 - u0) = b1 - b0 for the images b0, b1 of u0, u1.
  Element du(u1.size());
  for (std::size_t i = 0; i < u1.size(); ++i) du[i] = u1[i] - u0[i];
  if (ring.kind == RingContext::Kind::FiniteField) du = reduce(ring, du);
  for (const auto& b0 : B)
    for (const auto& b1 : B) {
      if (b0 == b1) continue;
      auto r = solve_scale(ring, du, sub(ring, b1, b0));
      if (!r || !scales.contains(ring, *r)) continue;
      Element x = sub(ring, b0, scale_mul(ring, *r, u0));
      auto it = out.find(x);
      if (it != out.end() && !(*r < it->second)) continue;
      if (pattern_inside(B, x, *r, U)) offer(x, *r);
    }
  return out;
}

std::vector<Element> failed_basepoints(const WitnessedCover& c, const PatternFamily& U) {
  std::vector<Element> bad;
  for (const auto& [x, r] : c.witnesses)
    if (!pattern_inside(c.points, x, r, U)) bad.push_back(x);
  return bad;
}

std::vector<Element> failed_differences(const WitnessedCover& c, const PatternFamily& U) {
  std::vector<Element> bad;
  for (const auto& [d, a] : c.witnesses)
    if (!pattern_inside(c.points, a, d, U)) bad.push_back(d);
  return bad;
}

Normalized normalize_to_integers(const PatternFamily& U) {
  if (U.ring().kind != RingContext::Kind::Rationals && U.ring().kind != RingContext::Kind::Integers)
    fail(ErrorCode::RingMismatch, "normalization needs a rational family");
  std::vector<Rational> xs;
  for (const auto& u : U.elements()) xs.push_back(u[0]);
  BigInt c = lcm_of_denominators(xs);
  std::vector<Element> scaled;
  for (const auto& x : xs) scaled.push_back(scalar(Rational(x * c)));
  return {c, PatternFamily(RingContext::integers(), std::move(scaled), U.label().empty() ? "" : to_string(Rational(c)) + "*" + U.label())};
}

WitnessedCover harmonic_to_arithmetic(int k, const WitnessedCover& harmonic) {
  auto H = PatternFamily::harmonic(k);
  if (!failed_basepoints(harmonic, H).empty()) fail(ErrorCode::InvalidCover, "harmonic cover does not verify");
  WitnessedCover out;
  for (const auto& [x, r] : harmonic.witnesses) {
    if (is_zero(x)) fail(ErrorCode::InvalidCover, "basepoint 0 gives no progression difference");
    for (int i = 1; i <= k; ++i) out.points.insert(scalar(Rational(i * x[0] + r[0])));
    out.witnesses.emplace(x, r);
  }
  if (!failed_differences(out, PatternFamily::progression(k)).empty())
    fail(ErrorCode::InvalidCover, "transferred progression cover does not verify");
  return out;
}

HarmonicTransfer arithmetic_to_harmonic(int k, const WitnessedCover& arithmetic) {
  auto P = PatternFamily::progression(k);
  if (!failed_differences(arithmetic, P).empty()) fail(ErrorCode::InvalidCover, "progression cover does not verify");
  HarmonicTransfer out;
  auto needs_shift = [&](const Rational& t) {
    for (const auto& [d, a] : arithmetic.witnesses)
      if (a[0] + t == 0) return true;
    return false;
  };
  while (needs_shift(out.shift)) out.shift += 1;
  for (const auto& [d, a] : arithmetic.witnesses) {
    Rational base = a[0] + out.shift;
    for (int i = 1; i <= k; ++i) out.cover.points.insert(scalar(Rational((base + i * d[0]) / i)));
    out.cover.witnesses.emplace(d, scalar(base));
  }
  if (!failed_basepoints(out.cover, PatternFamily::harmonic(k)).empty())
    fail(ErrorCode::InvalidCover, "transferred harmonic cover does not verify");
  return out;
}

bool factorial_embed_check(std::int64_t x, std::int64_t r, int k) {
  if (k < 1 || r == 0) fail(ErrorCode::InvalidArgument, "need k >= 1 and r != 0");
  BigInt fact = 1;
  for (int i = 2; i <= k; ++i) fact *= i;
  const Rational X(static_cast<long>(x)), R(static_cast<long>(r));
  for (int i = 1; i <= k; ++i) {
    Rational point = X + Rational(fact * R) / i;
    Rational j = (point - X) / R;  // position in x + r.[k!]
    if (!is_integer(j) || j < 1 || j > fact) return false;
  }
  return true;
}

}  // namespace patcover
