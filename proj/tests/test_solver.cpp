#include <cmath>

#include "doctest.h"
#include "oracle.hpp"
#include "patcover/error.hpp"
#include "patcover/solver.hpp"

using namespace patcover;

namespace {

CoverProblem g_prime(std::vector<std::int64_t> U, std::int64_t N, Window w, ScaleDomain sc) {
  return {PatternFamily::integers(U), {DemandKind::CountBasepoints, {}, N}, sc, w};
}

}  // namespace

TEST_CASE("every-basepoint cover of {1,2} with positive scales") {
  CoverProblem p{PatternFamily::integers({1, 2}),
                 {DemandKind::EveryBasepointIn, {scalar(1), scalar(2)}, 0},
                 ScaleDomain::range(1, 10),
                 std::nullopt};
  auto s = solve_min_cover(p);
  CHECK(s.size == 3);
  CHECK(s.certified_optimal);
  CHECK(verify_solution(p, s));
  CHECK(brute_force_oracle(p).size == 3);
}

TEST_CASE("singleton family covers many basepoints with one point") {
  auto p = g_prime({1}, 5, {-8, 8}, ScaleDomain::range(-20, 20));
  CHECK(solve_min_cover(p).size == 1);
  CHECK(brute_force_oracle(p).size == 1);
}

TEST_CASE("G' for {1,2} matches naive enumeration") {
  auto scales = oracle::range_nonzero(-4, 4);
  for (std::int64_t N = 1; N <= 10; ++N) {
    auto p = g_prime({1, 2}, N, {-8, 8}, ScaleDomain::range(-4, 4));
    auto s = solve_min_cover(p);
    CHECK(s.certified_optimal);
    CHECK(verify_solution(p, s));
    CHECK(s.size == oracle::min_count_cover({1, 2}, scales, -8, 8, static_cast<std::size_t>(N)));
  }
  auto five = solve_min_cover(g_prime({1, 2}, 5, {-8, 8}, ScaleDomain::range(-4, 4)));
  CHECK(five.size == 3);
  CHECK(brute_force_oracle(g_prime({1, 2}, 5, {-8, 8}, ScaleDomain::range(-4, 4))).size == 3);
}

TEST_CASE("F'_2 matches naive enumeration") {
  auto P2 = PatternFamily::progression(2);
  for (std::int64_t N = 1; N <= 6; ++N) {
    CoverProblem p{P2, {DemandKind::CountDifferences, {}, N}, ScaleDomain::range(1, 12), Window{0, 12}};
    auto s = solve_min_cover(p);
    CHECK(verify_solution(p, s));
    std::vector<std::int64_t> diffs;
    for (int d = 1; d <= 12; ++d) diffs.push_back(d);
    CHECK(s.size == oracle::min_difference_cover({1, 2}, diffs, 0, 12, static_cast<std::size_t>(N)));
  }
  CoverProblem one{P2, {DemandKind::CountDifferences, {}, 1}, ScaleDomain::range(1, 5), Window{0, 5}};
  CHECK(solve_min_cover(one).size == 2);
}

TEST_CASE("field cover of F_5 for {1,2}") {
  auto p = standard_problem(Quantity::g, PatternFamily::integers({1, 2}), 5, {0, 0}, ScaleDomain::nonzero());
  auto s = solve_min_cover(p);
  CHECK(s.size == 4);
  CHECK(s.size == oracle::min_field_cover(5, {1, 2}));
  CHECK(verify_solution(p, s));
  CHECK(brute_force_oracle(p).size == 4);
}

TEST_CASE("g_{1,{1}} is 2 for small primes") {
  for (std::int64_t q : {3, 5, 7, 11}) {
    auto p = standard_problem(Quantity::g, PatternFamily::integers({1}), q, {0, 0}, ScaleDomain::nonzero());
    CHECK(solve_min_cover(p).size == 2);
    CHECK(oracle::min_field_cover(q, {1}) == 2);
  }
}

TEST_CASE("rational families are normalized") {
  CoverProblem p{PatternFamily::harmonic(2), {DemandKind::CountBasepoints, {}, 3}, ScaleDomain::range(-4, 4),
                 Window{-8, 8}};
  auto s = solve_min_cover(p);
  CHECK(s.normalization == 2);
  CHECK(verify_solution(p, s));
  CHECK(s.size == solve_min_cover(g_prime({1, 2}, 3, {-8, 8}, ScaleDomain::range(-4, 4))).size);
}

TEST_CASE("difference demands over a rational family keep their differences") {
  CoverProblem p{PatternFamily::harmonic(2), {DemandKind::EveryDifferenceIn, {scalar(1), scalar(2)}, 0}, ScaleDomain::range(1, 3),
                 Window{0, 0}};
  auto s = solve_min_cover(p);
  CHECK(verify_solution(p, s));
  CHECK(s.cover.witnesses.count(scalar(1)));
  CHECK(s.cover.witnesses.count(scalar(2)));
  // 0 + {1, 1/2} and 0 + {2, 1} share 1
  CHECK(s.size == 3);
  CHECK(s.cover.points == PointSet{scalar(Rational(1, 2)), scalar(1), scalar(2)});
  CHECK(brute_force_oracle(p).size == 3);
}

TEST_CASE("infeasible and oversized problems") {
  CoverProblem p{PatternFamily::integers({1, 2}), {DemandKind::CountBasepoints, {}, 50}, ScaleDomain::range(1, 2),
                 Window{0, 5}};
  CHECK_THROWS_AS(solve_min_cover(p), Error);
  auto big = g_prime({1, 2}, 5, {-20, 20}, ScaleDomain::range(-4, 4));
  try {
    brute_force_oracle(big);
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
}

TEST_CASE("budget exhaustion returns an uncertified incumbent") {
  auto p = g_prime({1, 2, 3}, 12, {-15, 15}, ScaleDomain::range(-6, 6));
  auto s = solve_min_cover(p, Budget{50, 60});
  CHECK_FALSE(s.certified_optimal);
  CHECK(s.status == "budget_exhausted");
  CHECK(verify_solution(p, s));
}

TEST_CASE("monotone in N and in the family") {
  std::size_t prev = 0;
  for (std::int64_t N = 1; N <= 8; ++N) {
    auto a = solve_min_cover(g_prime({1, 2}, N, {-7, 7}, ScaleDomain::range(-4, 4))).size;
    auto b = solve_min_cover(g_prime({1, 2, 3}, N, {-7, 7}, ScaleDomain::range(-4, 4))).size;
    CHECK(a >= prev);
    CHECK(b >= a);
    prev = a;
  }
}

TEST_CASE("deterministic results") {
  auto p = g_prime({1, 3}, 6, {-6, 6}, ScaleDomain::range(-3, 3));
  auto a = solve_min_cover(p), b = solve_min_cover(p);
  CHECK(a.cover.points == b.cover.points);
  CHECK(a.cover.witnesses == b.cover.witnesses);
}

TEST_CASE("Katz-Tao checks") {
  SumsetGraphInstance full;
  for (int a : {0, 1})
    for (int b : {0, 1}) full.G.emplace(a, b);
  auto r = verify_katz_tao(full);
  CHECK(r.n == 3);
  CHECK(r.diff_size == 3);
  CHECK(r.holds);

  SumsetGraphInstance single;
  single.G.emplace(0, 0);
  auto s = verify_katz_tao(single);
  CHECK(s.n == 1);
  CHECK(s.diff_size == 1);
  CHECK(s.holds);
}

TEST_CASE("lower bound instance from solver covers") {
  for (auto fam : {std::vector<std::int64_t>{3, 4, 6}, std::vector<std::int64_t>{15, 3, 5}}) {
    auto U = PatternFamily::integers(fam);
    for (std::int64_t N = 1; N <= 3; ++N) {
      auto sol = solve_min_cover(g_prime(fam, N, {-12, 12}, ScaleDomain::range(-3, 3)));
      auto rep = lower_bound_instance(U, sol.cover);
      CHECK(rep.bound_holds);
      CHECK(rep.katz_tao.holds);
      CHECK(rep.katz_tao.diff_size == rep.basepoints);
      CHECK(rep.katz_tao.n <= rep.cover_size);
    }
  }
  auto rep = lower_bound_instance(PatternFamily::integers({3, 4, 6}), WitnessedCover{});
  CHECK(rep.bound_holds);
  CHECK_THROWS_AS(lower_bound_instance(PatternFamily::integers({1, 2, 3}), WitnessedCover{}), Error);
}

TEST_CASE("exponent curves") {
  auto rows = exponent_curve(
      [](std::int64_t N) { return g_prime({1, 2}, N, {-8, 8}, ScaleDomain::range(-4, 4)); }, {10, 2, 5});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].N == 2);
  CHECK(rows[0].size == 2);
  CHECK(rows[1].size == 3);
  CHECK(rows[2].size == 4);
  CHECK(*rows[2].exponent > 0.5);

  auto ap1 = exponent_curve(
      [](std::int64_t N) {
        return CoverProblem{PatternFamily::progression(1), {DemandKind::CountDifferences, {}, N},
                            ScaleDomain::range(1, 10), Window{-10, 10}};
      },
      {1, 4, 9});
  CHECK(!ap1[0].exponent);
  CHECK(*ap1[1].exponent == 0.0);

  for (std::int64_t q : {3, 5, 7}) {
    auto row = exponent_curve(
        [](std::int64_t p) {
          return standard_problem(Quantity::g, PatternFamily::integers({1}), p, {0, 0}, ScaleDomain::nonzero());
        },
        {q});
    CHECK(row[0].size == 2);
    CHECK(std::abs(*row[0].exponent - std::log(2.0) / std::log(double(q))) < 1e-12);
  }
}
