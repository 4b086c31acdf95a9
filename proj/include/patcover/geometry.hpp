#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "patcover/rational.hpp"

namespace patcover {

/// The half-space <w, y> <= c. The normal w has rational leading coordinates `head`; any
/// remaining coordinates are known only through their squared norm `tail_norm_sq`.
/// `branch` tells apart faces that share head and tail norm (e.g. the two signs of the tail).
struct Hyperplane {
  std::vector<Rational> head;
  Rational tail_norm_sq = 0;
  int branch = 0;
  Rational c = 1;

  Rational norm_sq() const;
  bool rational() const { return tail_norm_sq == 0; }
};

struct PolytopeSpec {
  int n = 2;
  std::vector<Hyperplane> hyperplanes;

  /// Checks c > 0, head sizes, and at least n+1 faces when `bounded` is claimed.
  void validate(bool bounded = true) const;
};

PolytopeSpec square();
/// |x| + |y| <= 1: the square rotated by 45 degrees, with rational normals (±1, ±1).
PolytopeSpec diamond();
/// Normals (j/k, ±sqrt(1 - j^2/k^2)), j = -k..k, offsets 1; 4k distinct faces.
PolytopeSpec harmonic_polygon(int k);
/// The simplex x_i >= -1, sum x_i <= 1 in R^n.
PolytopeSpec simplex(int n);

/// a + q sqrt(b) with b >= 0.
struct Surd {
  Rational a = 0, q = 0, b = 0;
  double to_double() const;
};

/// -1, 0 or 1.
int surd_sign(const Surd& x);
int surd_compare(const Surd& x, const Surd& y);

struct HarmonicFamily {
  std::vector<Rational> J;                  // the progression, increasing
  std::map<Rational, std::vector<std::size_t>> faces;  // j -> face indices
  std::vector<std::size_t> residual;
  Rational offset = 0, step = 1;            // J = offset + step * {0..m-1}
  std::size_t m() const { return J.size(); }
};

/// j = <w, v>/c for the line direction v (supported on the head coordinates). The faces whose j values
/// form the longest progression make up J; the remaining faces are residual.
HarmonicFamily harmonic_index_extract(const PolytopeSpec& P, const std::vector<Rational>& direction = {1});

struct PolygonReport {
  std::size_t faces = 0;
  std::size_t duplicates_removed = 0;
  std::vector<std::pair<double, double>> vertices;  // counterclockwise
  Surd max_vertex_norm_sq;                          // Hausdorff distance to the circle is sqrt of this minus 1
  double hausdorff = 0;
};

PolygonReport polygon_report(int k);

struct BoundEntry {
  Rational lower, upper;
  std::string lower_source, upper_source;
};

class BoundsRegistry {
 public:
  /// Seeded with f(1), f(2), f(3), f(4) and the generic 1 - 1/m upper bound.
  static BoundsRegistry standard();
  void set(int m, BoundEntry e);
  /// Throws RegistryMiss when m has no entry and the generic fill is off.
  BoundEntry lookup(int m) const;
  bool generic_fill = true;

 private:
  std::map<int, BoundEntry> entries_;
};

enum class BoundKind { HType, GType };

struct DimensionBounds {
  Rational lo, hi;
  std::string lo_source, hi_source;
  std::optional<std::size_t> m;
  bool registry_miss = false;
};

/// HType: sets containing a homothet centred at each point of a segment with the given direction.
/// GType: centres filling [0,1]^n.
DimensionBounds dimension_bounds(const PolytopeSpec& P, BoundKind kind, const BoundsRegistry& reg,
                                 const std::vector<Rational>& direction = {1});

struct Cube {
  std::vector<Rational> center;
  Rational half_width;
};

struct BadPair {
  std::size_t i, j;
  std::vector<Rational> normal;  // w_i - w_j; the bad hyperplane is <x, normal> = 0
  bool avoided = false;
};

struct LineFamilySetup {
  std::vector<std::vector<Rational>> W;
  std::vector<Rational> c;
  std::vector<BadPair> bad;
  std::optional<Rational> delta;  // none when all offsets coincide
  bool certified = false;

  /// x.U + r (c_1..c_m).
  std::vector<Rational> point(const std::vector<Rational>& x, const Rational& r) const;
  bool off_diagonal(const std::vector<Rational>& x, const Rational& r) const;
};

/// Needs rational normals. Throws DegeneratePolytope when two faces have the same unit normal.
LineFamilySetup line_family_setup(const PolytopeSpec& P, const Cube& S);

}  // namespace patcover
