#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "patcover/cyclotomic.hpp"
#include "patcover/fractal.hpp"

namespace patcover {

/// Which basepoints the construction serves: {1..Q-1}^d, or every residue vector {0..Q-1}^d
/// (the zero vector then takes the fallback scale).
enum class QrDomain { Box, AllResidues };

struct QrParams {
  int n = 2;
  std::vector<IntVec> U;
  PrimeSystem ps;
  std::int64_t f_k = 0;  // max sup norm over U
  QrDomain domain = QrDomain::Box;

  int d() const { return ps.d(); }
  std::int64_t Q() const;
  /// f_k^d >= k, which every family of k distinct vectors with sup norm f_k satisfies.
  bool counting_aside_holds() const;
};

/// Checks nonzero coordinates, arity d and that every prime exceeds f_k.
QrParams make_qr_params(int n, std::vector<IntVec> U, PrimeSystem ps, QrDomain domain = QrDomain::Box);

/// The prime system q_{f_k}..q_{2 f_k} (primes = 3 mod 4 when n = 4, odd primes when n = 2).
QrParams qr_params_standard(int n, std::vector<IntVec> U, QrDomain domain = QrDomain::Box);

/// The CRT lift in [0, Q)^d of the per-prime squares of x.
IntVec qr_scale(const IntVec& x, const PrimeSystem& ps);

/// A finite set S with a pattern U (x) r(x) for every digit x in {0..Q-1}^d (or {1..Q-1}^d).
struct DigitCover {
  int n = 2;
  int d = 1;
  std::int64_t Q = 1;
  std::vector<IntVec> U;
  std::vector<IntVec> S;  // sorted, distinct
  std::function<IntVec(const IntVec&)> scale;
  bool all_digits = false;  // patterns at every digit of {0..Q-1}^d, zero included
};

struct QrCover {
  QrParams params;
  DigitCover cover;
  std::size_t basepoints = 0;
  std::size_t fallback = 0;      // basepoints whose lifted scale vanished
  std::size_t zero_divisor = 0;  // basepoints with some residue pi_i(x) = 0
  std::vector<std::size_t> projection_sizes;  // |S mod q_i|
  std::vector<std::size_t> projection_limits; // k (q_i^d + 1)/2 + k
  double bound_shape = 0;        // k^2 f_k^d 2^{-#primes} Q^d prod(1 + q_i^{-d})
  double ratio = 0;              // |S| / Q^d
  double exponent = 0;           // log|S| / log Q
  bool verified = false;
};

/// Throws TooLarge when Q^d exceeds max_basepoints.
QrCover build_qr_cover(const QrParams& params, std::size_t max_basepoints = 5'000'000);

/// Independent check: for every digit, r(x) != 0 and x + u (x) r(x) lies in S for all u.
bool verify_digit_cover(const DigitCover& c);

struct PowerExtendResult {
  std::int64_t N = 1;  // Q^q
  std::vector<IntVec> A;
  std::size_t checked = 0;
  std::size_t failures = 0;
  bool exhaustive = false;
  double exponent = 0;        // log|A| / log N
  double base_exponent = 0;   // log|S| / log Q
};

/// A = { s_0 + s_1 Q + ... + s_{q-1} Q^{q-1} : s_i in S }. Every basepoint of {0..N-1}^d \ {0} is checked
/// when N^d <= 10^5, otherwise `samples` random basepoints are checked.
PowerExtendResult power_extend(const DigitCover& c, int q_exp, std::uint64_t seed = 1, std::size_t samples = 2000,
                               std::size_t max_points = 4'000'000);

struct PolygonCoverRow {
  int q = 1;
  std::int64_t N = 1;
  double size = 0;  // |S|^q, an upper bound on |A| past q = 1
  double exponent = 0;
};

struct RotatedPolygonCover {
  int k = 3;
  std::vector<IntVec> vertices;  // lattice k-gon
  IntVec rotation;               // Gaussian w with U (x) w free of zero coordinates
  double distortion = 0;         // max |v_j - R e^{2 pi i j/k}| / R before scaling by w
  std::int64_t radius = 1;
  QrCover cover;
  std::vector<PolygonCoverRow> table;
};

/// Uses the primes = 3 mod 4 above f_k, as many as keep Q^2 <= max_basepoints.
RotatedPolygonCover rotated_polygon_cover(int k, std::int64_t N_max = 1'000'000, std::size_t max_basepoints = 200'000);

struct Handoff {
  DigitSystem system;
  IntVec shift;  // digits are S - shift
  double dimension = 0;
  bool digits_in_range = false;
};

Handoff attractor_handoff(const std::vector<IntVec>& S, std::int64_t Q);

}  // namespace patcover
