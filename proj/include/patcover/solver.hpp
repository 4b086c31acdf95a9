#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "patcover/pattern.hpp"

namespace patcover {

enum class DemandKind { EveryBasepointIn, CountBasepoints, EveryDifferenceIn, CountDifferences };

std::string to_string(DemandKind k);
DemandKind demand_kind_from_string(const std::string& s);

struct Demand {
  DemandKind kind = DemandKind::CountBasepoints;
  std::vector<Element> targets;  // Every* modes
  std::int64_t count = 0;        // Count* modes

  bool difference_type() const {
    return kind == DemandKind::EveryDifferenceIn || kind == DemandKind::CountDifferences;
  }
  bool count_type() const { return kind == DemandKind::CountBasepoints || kind == DemandKind::CountDifferences; }
};

/// Per-coordinate inclusive integer range.
struct Window {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  bool contains(const Element& e) const;
  std::vector<Element> enumerate(int dim) const;
  std::string describe() const { return std::to_string(lo) + ".." + std::to_string(hi); }
};

/// Scales bound the pattern scale (basepoint demands) or the progression
/// difference (difference demands). The point window bounds basepoints for
/// difference demands and, in Count modes, both basepoints and cover points.
struct CoverProblem {
  PatternFamily family;
  Demand demand;
  ScaleDomain scales;
  std::optional<Window> window;
};

struct Budget {
  std::uint64_t max_nodes = 200'000'000;
  double max_seconds = 600;
};

struct CoverSolution {
  WitnessedCover cover;
  std::size_t size = 0;
  bool certified_optimal = false;
  std::string status;  // "optimal" or "budget_exhausted"
  std::string window_used;
  BigInt normalization = 1;  // c when a rational family was rescaled to cU
  std::uint64_t nodes = 0;
};

CoverSolution solve_min_cover(const CoverProblem& p, const Budget& budget = {});

/// Exact minimum by subset enumeration in increasing size; at most 24 candidate points.
CoverSolution brute_force_oracle(const CoverProblem& p);

inline constexpr std::size_t kOracleCap = 24;

/// Re-checks every witness of a solution against the problem's family and demand.
bool verify_solution(const CoverProblem& p, const CoverSolution& s);

struct SumsetGraphInstance {
  std::set<std::pair<BigInt, BigInt>> G;  // A1, A2 are the projections of G
};

struct KatzTaoReport {
  std::size_t a1 = 0, a2 = 0, sums = 0;
  std::size_t n = 0;
  std::size_t diff_size = 0;
  bool holds = false;  // diff^6 <= n^11
};

KatzTaoReport verify_katz_tao(const SumsetGraphInstance& inst);

struct LowerBoundReport {
  std::int64_t a = 0, b = 0, c = 0;  // ordering of U with c(a+b) = 2ab
  std::size_t cover_size = 0;
  std::size_t basepoints = 0;
  KatzTaoReport katz_tao;
  bool bound_holds = false;  // |B|^11 >= N^6
};

/// Builds A1 = b.B-images, A2 = a.B-images and the pairing graph from a verified
/// basepoint cover for U = {a, b, c} with c(a+b) = 2ab, then checks |B| >= N^(6/11).
LowerBoundReport lower_bound_instance(const PatternFamily& U, const WitnessedCover& cover);

enum class Quantity { FPrime, G, GPrime, g };

std::string to_string(Quantity q);

struct ExponentRow {
  std::int64_t N = 0;
  std::size_t size = 0;
  std::optional<double> exponent;  // log size / log N, undefined at N = 1
  bool certified = false;
  std::string error;
};

/// Solves make(N) for each N, sorted ascending.
std::vector<ExponentRow> exponent_curve(const std::function<CoverProblem(std::int64_t)>& make,
                                        std::vector<std::int64_t> Ns, const Budget& budget = {});

/// Standard problem for a quantity at parameter N (for g, N is the prime p and n = 1).
CoverProblem standard_problem(Quantity q, const PatternFamily& U, std::int64_t N, const Window& window,
                              const ScaleDomain& scales);

}  // namespace patcover
