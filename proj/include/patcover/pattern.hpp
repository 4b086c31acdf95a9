#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "patcover/ring.hpp"

namespace patcover {

/// A finite set U of nonzero ring scalars; patterns are x + r.U.
class PatternFamily {
 public:
  PatternFamily(RingContext ring, std::vector<Element> elements, std::string label = {});

  static PatternFamily integers(const std::vector<std::int64_t>& elements, std::string label = {});
  /// 1/[k] = {1, 1/2, ..., 1/k} over the rationals.
  static PatternFamily harmonic(int k);
  /// [k] = {1, ..., k}, i.e. k-term arithmetic progressions.
  static PatternFamily progression(int k);

  const RingContext& ring() const { return ring_; }
  const std::vector<Element>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  const std::string& label() const { return label_; }

  /// Max |coordinate| over all elements.
  Rational sup_norm() const;

  bool operator==(const PatternFamily& o) const { return ring_ == o.ring_ && elements_ == o.elements_; }

 private:
  RingContext ring_;
  std::vector<Element> elements_;
  std::string label_;
};

/// Admissible scales. Bounds apply per coordinate; unset bounds are unbounded.
/// Over F_p the domain is always all nonzero vectors and the bounds are ignored.
struct ScaleDomain {
  std::optional<std::int64_t> lo;
  std::optional<std::int64_t> hi;
  bool positive_only = false;

  static ScaleDomain nonzero() { return {}; }
  static ScaleDomain positive() { return {std::nullopt, std::nullopt, true}; }
  static ScaleDomain range(std::int64_t lo, std::int64_t hi) { return {lo, hi, false}; }

  bool contains(const RingContext& ring, const Element& r) const;
  bool finite(const RingContext& ring) const;
  /// All nonzero scales in the domain, in increasing order; requires finite().
  std::vector<Element> enumerate(const RingContext& ring) const;
  std::string describe() const;
};

PointSet instantiate_pattern(const Element& x, const Element& r, const PatternFamily& U);
PointSet instantiate_pattern(const RingContext& ring, const Element& x, const Element& r, const PatternFamily& U);

/// True when x + r.U has |U| distinct points and lies inside B.
bool pattern_inside(const PointSet& B, const Element& x, const Element& r, const PatternFamily& U);

/// Every basepoint carrying a U-pattern in B with scale in the domain, mapped to
/// its smallest witness scale.
std::map<Element, Element> basepoints_covered(const PointSet& B, const PatternFamily& U, const ScaleDomain& scales);

/// A point set together with a witness for each demand. For basepoint demands the
/// key is the basepoint and the value the scale; for difference demands the key is
/// the difference and the value the basepoint of the progression.
struct WitnessedCover {
  PointSet points;
  std::map<Element, Element> witnesses;
};

/// Basepoints whose witness fails; empty means the cover verifies.
std::vector<Element> failed_basepoints(const WitnessedCover& c, const PatternFamily& U);
/// Differences whose witness progression a + d.U is not inside the points.
std::vector<Element> failed_differences(const WitnessedCover& c, const PatternFamily& U);

struct Normalized {
  BigInt c;
  PatternFamily family;
};

Normalized normalize_to_integers(const PatternFamily& U);

/// From a 1/[k]-pattern cover (basepoint -> scale) to a k-term AP cover
/// (difference -> AP basepoint) with points U_i i.A_i, A_i = {x + r(x)/i}.
WitnessedCover harmonic_to_arithmetic(int k, const WitnessedCover& harmonic);

struct HarmonicTransfer {
  WitnessedCover cover;
  Rational shift = 0;  // translation applied to the AP set to avoid zero basepoints
};

/// From a k-term AP cover (difference -> basepoint) to a 1/[k]-pattern cover
/// (basepoint d -> scale a(d)) with points {(a(d) + i d)/i}.
HarmonicTransfer arithmetic_to_harmonic(int k, const WitnessedCover& arithmetic);

/// Whether x + (k! r).(1/[k]) lies inside x + r.[k!].
bool factorial_embed_check(std::int64_t x, std::int64_t r, int k);

}  // namespace patcover
