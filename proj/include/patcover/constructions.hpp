#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "patcover/pattern.hpp"

namespace patcover {

struct PowersOfTwo {
  PointSet B;
  std::map<Element, Element> covered;  // basepoint -> scale
};

/// B = {1, 2, ..., 2^(m-1)} and the basepoints of its {1,2}-patterns.
PowersOfTwo powers_of_two_cover(int m);

struct TowerState {
  int level = 1;
  int k = 2;
  PointSet B;
  std::map<Element, Element> S;  // basepoint -> witness scale of its k-term progression
  std::vector<std::int64_t> t_history;
};

TowerState tower_start(int k);
/// One step with the minimal t such that min(t + S) > max(B); result is re-verified.
TowerState tower_step(const TowerState& state);
/// Invariants: |B| = k^level, |S| = level k^(level-1), every witness verifies.
bool tower_invariants_hold(const TowerState& state);

enum class TranslateMode { Greedy, Randomized };

/// T with S + T containing {1..X}; greedy picks the translate with most new coverage, smallest t on ties.
std::vector<std::int64_t> random_translate_cover(const std::set<std::int64_t>& S, std::int64_t X,
                                                 TranslateMode mode = TranslateMode::Greedy, std::uint64_t seed = 0);

/// C (X/|S|) max(1, ln X) with C = 4.
double translate_bound(std::size_t s_size, std::int64_t X);

using Point2 = std::pair<BigInt, BigInt>;
using Slope = std::optional<Rational>;  // nullopt means infinity

/// pi_r(A) = {x + r y}, with pi_inf(x, y) = y.
std::set<Rational> project(const std::set<Point2>& A, const Slope& r);

struct ProjectionSystem {
  std::set<Point2> B;
  std::vector<Slope> slopes;  // distinct, none equal to -1
};

struct AmplifyResult {
  int n = 1;
  std::int64_t t = 1;
  BigInt distinguished;                 // |pi_{-1}(B')|
  std::vector<BigInt> slope_sizes;      // |pi_j(B')| per slope
  BigInt base_distinguished;            // |pi_{-1}(B)|
  std::vector<BigInt> base_slope_sizes; // |pi_j(B)|
  bool post_holds = false;              // |pi_{-1}(B')| > M max |pi_j(B')|^(1+eps)
  std::optional<std::set<Point2>> B_prime;  // present when |B|^n is small enough to list
};

/// Tensor power B^n pushed down by psi_t, with n minimal for the size inequality and t found
/// by increasing search with an exact injectivity test on each projection.
AmplifyResult amplify(const ProjectionSystem& sys, const Rational& eps, const BigInt& M,
                      std::optional<int> forced_n = std::nullopt, std::uint64_t materialize_cap = 1u << 20);

/// True when phi_t(v) = sum v_i t^i is injective on P^n.
bool phi_t_injective(const std::set<Rational>& P, int n, std::int64_t t);

/// f(x) = sum_i (10kN)^i x_i; coordinates must satisfy |x_i| < 5kN.
BigInt encode_nd_to_1d(const std::vector<std::int64_t>& x, int k, std::int64_t N);
std::vector<BigInt> encode_nd_to_1d(const std::vector<std::vector<std::int64_t>>& A, int k, std::int64_t N);

/// floor(N {theta x}) with theta = m / 2^64.
std::int64_t phi_theta(std::uint64_t m, std::int64_t N, const BigInt& x);
std::int64_t phi_theta(const Rational& theta, std::int64_t N, const BigInt& x);

struct PhiThetaResult {
  std::uint64_t theta = 0;  // theta = theta / 2^64
  int attempts = 0;
  std::size_t collisions = 0;
  std::set<std::int64_t> A2;
  std::set<std::int64_t> A3;
  std::map<std::int64_t, std::int64_t> images;  // reduced basepoint -> reduced scale, verified in A3
  std::vector<std::int64_t> T;                  // completion translates (when requested)
  std::set<std::int64_t> A1;                    // A3 + T
};

/// Reduces a cover of N basepoints (basepoint -> scale) for a family of positive integers.
PhiThetaResult phi_theta_reduce(const PatternFamily& U, const WitnessedCover& cover, std::int64_t N,
                                std::uint64_t seed, bool complete = false, int max_attempts = 64);

}  // namespace patcover
