#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "patcover/pattern.hpp"
#include "patcover/solver.hpp"

namespace patcover {

/// A set A in F_p^n with a nonzero scale r(x) for each covered basepoint x,
/// so that x + pi_p(U) r(x) lies in A.
struct FieldCover {
  std::int64_t p = 2;
  int n = 1;
  std::vector<std::int64_t> U;
  PointSet A;
  std::map<Element, Element> witnesses;

  PatternFamily family() const;
  bool covers_everything() const;
};

/// Every witness verifies (distinct points, nonzero scale).
bool verify_field_cover(const FieldCover& c);

/// All of F_p^n in lexicographic order.
std::vector<Element> field_points(std::int64_t p, int n);

/// Exact minimum via the cover solver; p^n <= 10^4.
FieldCover ff_min_cover(std::int64_t p, int n, const std::vector<std::int64_t>& U,
                        const std::optional<std::vector<Element>>& demand = std::nullopt, const Budget& budget = {});

/// A^n with coordinatewise witnesses, from a verified one-dimensional cover of all of F_p.
FieldCover product_cover(const FieldCover& c, int n_target);

struct LiftResult {
  std::vector<std::vector<std::int64_t>> A2;  // lifted points in Z^n, sorted
  std::map<std::vector<std::int64_t>, std::vector<std::int64_t>> witnesses;  // lifted basepoint -> scale
  bool size_bound_holds = false;   // |A2| <= (2 p^eps)^n |A1|
  BigInt b;                        // base of the encoding into Z
  std::vector<BigInt> encoded;     // phi(A2), sorted
  std::map<BigInt, BigInt> encoded_witnesses;  // phi(x) -> phi(r(x))
  std::size_t basepoints = 0;
};

/// Lifts through psi: F_p -> {0..p-1} and encodes Z^n into Z. Requires max|u| < p^eps.
LiftResult lift_cover(const FieldCover& c, const Rational& eps);

struct PrimeChoice {
  std::int64_t p = 0;
  std::map<std::int64_t, std::vector<std::size_t>> divides;  // prime in (N, 2N] -> indices x with p | r(x)
};

/// Smallest prime in (N, 2N] dividing none of the scales r(1..N); N = scales.size().
PrimeChoice step3_prime_choice(const std::vector<std::int64_t>& scales);

struct TranslatedFieldCover {
  std::vector<Element> T;
  FieldCover cover;
};

/// Greedy translates T with S + T = F_p^n, where S is the covered basepoint set of c.
TranslatedFieldCover ff_translate_cover(const FieldCover& c);

/// 4 (p^n/|S|) max(1, n ln p).
double field_translate_bound(std::int64_t p, int n, std::size_t s_size);

}  // namespace patcover
