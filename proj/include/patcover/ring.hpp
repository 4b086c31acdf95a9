#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "patcover/rational.hpp"

namespace patcover {

/// Ring elements are coordinate vectors: one coordinate over Z and Q,
/// d = phi(n) over Z[zeta_n], dim over F_p^dim (residues stored in [0, p)).
using Element = std::vector<Rational>;
using PointSet = std::set<Element>;

struct RingContext {
  enum class Kind { Integers, Rationals, Cyclotomic, FiniteField };

  Kind kind = Kind::Integers;
  int n = 0;
  std::int64_t p = 0;
  int dim = 1;

  static RingContext integers() { return {}; }
  static RingContext rationals() { return {Kind::Rationals, 0, 0, 1}; }
  static RingContext cyclotomic(int order);
  static RingContext finite_field(std::int64_t p, int dim = 1);

  /// Coordinates of a point, basepoint or scale.
  int point_dim() const;
  /// Coordinates of a family element (field families are integer scalars).
  int family_dim() const;

  std::string describe() const;

  bool operator==(const RingContext&) const = default;
};

Element scalar(const Rational& x);
Element vec(std::initializer_list<long> xs);

bool is_zero(const Element& e);

/// Throws if e is not a valid point of the ring (wrong arity, non-integral, unreduced residue).
void validate_point(const RingContext& ring, const Element& e);

Element reduce(const RingContext& ring, Element e);
Element add(const RingContext& ring, const Element& a, const Element& b);
Element sub(const RingContext& ring, const Element& a, const Element& b);
Element negate(const RingContext& ring, const Element& a);

/// r . u, where u is a family element: scalar product, (x) in Z[zeta_n], or u*r mod p.
Element scale_mul(const RingContext& ring, const Element& r, const Element& u);

/// The r with r . du = db, if it exists in the ring.
std::optional<Element> solve_scale(const RingContext& ring, const Element& du, const Element& db);

std::string to_string(const Element& e);

}  // namespace patcover
