#pragma once

#include <cstdint>
#include <vector>

#include "patcover/error.hpp"
#include "patcover/rational.hpp"

namespace patcover {

/// Z[zeta_n] in the power basis, n in {2, 4}.
struct CyclotomicRing {
  int n = 4;
  int d = 2;

  explicit CyclotomicRing(int order);
};

struct CyclotomicElement {
  std::vector<std::int64_t> coeffs;

  bool operator==(const CyclotomicElement&) const = default;
  bool is_zero() const;
  std::int64_t sup_norm() const;
};

/// Product in the power basis. For n = 2 this is integer multiplication,
/// for n = 4 it is multiplication of Gaussian integers (re, im).
template <class T>
std::vector<T> otimes_coeffs(int n, const std::vector<T>& r, const std::vector<T>& u) {
  if (n == 2) return {T(r[0] * u[0])};
  return {T(r[0] * u[0] - r[1] * u[1]), T(r[0] * u[1] + r[1] * u[0])};
}

CyclotomicElement otimes(const CyclotomicRing& ring, const CyclotomicElement& r, const CyclotomicElement& u);
CyclotomicElement add(const CyclotomicRing& ring, const CyclotomicElement& a, const CyclotomicElement& b);

struct NormBoundReport {
  std::int64_t lhs = 0;  // sup norm of r (x) u
  std::int64_t rhs = 0;  // 2d |r| |u|
  bool holds = false;
};

NormBoundReport norm_bound_check(const CyclotomicRing& ring, const CyclotomicElement& r, const CyclotomicElement& u);

struct PrimeSystem {
  int n = 2;
  int a = 1;
  int i_lo = 1;
  int i_hi = 1;
  std::vector<std::int64_t> primes;
  BigInt Q = 1;

  int d() const { return n == 4 ? 2 : 1; }
};

/// The i_lo-th through i_hi-th primes congruent to a mod n (1-indexed).
/// For n = 2 only a = 1 is accepted and 2 is skipped, so q_1 = 3.
PrimeSystem find_prime_system(int n, int a, int i_lo, int i_hi);

/// A system from an explicit prime list; each prime must be odd and, for n = 4, congruent to 3 mod 4.
PrimeSystem prime_system_from(int n, std::vector<std::int64_t> primes);

/// True when q stays prime in Z[zeta_n]; for n = 4 this means x^2 = -1 has no root mod q.
bool is_inert(std::int64_t q, int n);

using Residue = std::vector<std::int64_t>;

std::vector<Residue> crt_split(const std::vector<BigInt>& x, const PrimeSystem& ps);
std::vector<Residue> crt_split(const CyclotomicElement& x, const PrimeSystem& ps);

/// Coefficientwise CRT; representatives in [0, Q).
std::vector<BigInt> crt_lift(const std::vector<Residue>& residues, const PrimeSystem& ps);

struct PrimorialRatio {
  double log_product = 0;
  double m_log_m = 0;
  double ratio = 0;
};

PrimorialRatio primorial_ratio(const PrimeSystem& ps);

}  // namespace patcover
