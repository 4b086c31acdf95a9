#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "patcover/rational.hpp"

namespace patcover {

using IntVec = std::vector<std::int64_t>;

/// Base N, digit set A in Z^n, truncation depth.
struct DigitSystem {
  std::int64_t base = 2;
  std::vector<IntVec> digits;
  int dim = 1;
  int depth = 1;

  /// Distinct digits inside [0, N)^n, so the maps a + x/N satisfy the open set condition on (0,1)^n shifted.
  bool osc_certified() const;
};

DigitSystem make_digit_system(std::int64_t base, std::vector<IntVec> digits, int depth);

/// The s >= 0 with sum c_i^s = 1.
double moran_dimension(const std::vector<Rational>& ratios);

/// Points sum_{j<depth} a_j N^{-j}, stored as integer numerators over N^(depth-1),
/// one row of `dim` numerators per digit string.
struct AttractorTruncation {
  DigitSystem system;
  std::vector<IntVec> numerators;  // sorted, distinct

  Rational denominator() const;
  std::vector<std::vector<Rational>> points() const;
  /// The same points divided by N (denominator N^depth).
  std::vector<std::vector<Rational>> normalized_points() const;
};

AttractorTruncation build_truncation(const DigitSystem& sys);

struct BoxCountRow {
  int j = 0;             // box side N^{-j} in the normalized frame
  std::size_t count = 0;
};

struct BoxCountEstimate {
  std::vector<BoxCountRow> rows;
  double slope = 0;
};

/// Counts half-open boxes [i N^{-j}, (i+1) N^{-j}) of the normalized points; least-squares slope
/// of log count against j log N. Requires 1 <= j <= depth.
BoxCountEstimate box_count_estimate(const AttractorTruncation& t, const std::vector<int>& scales);

struct ApCheck {
  bool holds = false;
  bool carries = false;  // some formal digit lies outside [0, N)
  std::vector<std::vector<IntVec>> digit_strings;  // per i in 1..k, the digits a(r_m) + i r_m
};

/// r is given by base-N digit vectors r_0, r_1, ... (r = sum r_m N^{-m}); witness maps a digit
/// vector d to a basepoint a(d) of the discrete cover. Checks that each of the k points
/// sum_m (a(r_m) + i r_m) N^{-m}, 1 <= i <= k, is a digit string over A.
ApCheck ap_in_attractor_check(const DigitSystem& sys, const std::map<IntVec, IntVec>& witness,
                              const std::vector<IntVec>& r_digits, int k);

struct Discretized {
  std::vector<IntVec> S;  // q times the right endpoints, sorted and distinct
};

/// Each coordinate x goes to ceil(q x): the right endpoint of the interval (i/q, (i+1)/q] holding x, times q.
Discretized discretize_cover(const std::vector<std::vector<Rational>>& P, std::int64_t q);

struct DiscretizedProgressions {
  std::vector<IntVec> S;
  std::map<IntVec, IntVec> witnesses;  // q r(q) -> q a(r;q)
};

/// Rounds each progression a(r) + i r, 0 <= i < k, to a(r;q) + i r(q) and scales by q.
DiscretizedProgressions discretize_progressions(const std::map<std::vector<Rational>, std::vector<Rational>>& a_of_r,
                                                int k, std::int64_t q);

}  // namespace patcover
