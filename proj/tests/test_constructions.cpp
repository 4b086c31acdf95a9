#include <cmath>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "patcover/constructions.hpp"
#include "patcover/error.hpp"

using namespace patcover;

namespace {

std::set<std::int64_t> keys(const std::map<Element, Element>& m) {
  std::set<std::int64_t> out;
  for (const auto& kv : m) out.insert(to_int64(kv.first[0]));
  return out;
}

std::set<Point2> pts2(std::initializer_list<std::pair<long, long>> xs) {
  std::set<Point2> s;
  for (auto [x, y] : xs) s.emplace(BigInt(x), BigInt(y));
  return s;
}

}  // namespace

TEST_CASE("powers of two") {
  auto three = powers_of_two_cover(3);
  CHECK(keys(three.covered) == std::set<std::int64_t>{-2, 0, 3, 6, 7});
  CHECK(keys(powers_of_two_cover(2).covered) == std::set<std::int64_t>{0, 3});
  for (int m = 2; m <= 10; ++m) {
    std::set<std::int64_t> B;
    for (int i = 0; i < m; ++i) B.insert(std::int64_t{1} << i);
    auto want = oracle::covered(B, {1, 2}, oracle::range_nonzero(-(1 << m), 1 << m), 1 << (m + 1));
    auto got = powers_of_two_cover(m);
    CHECK(keys(got.covered) == want);
    CHECK(want.size() == static_cast<std::size_t>(m * m - 2 * m + 2));
  }
}

TEST_CASE("tower construction") {
  auto s1 = tower_start(2);
  auto s2 = tower_step(s1);
  CHECK(s2.t_history == std::vector<std::int64_t>{3});
  CHECK(s2.B == PointSet{scalar(1), scalar(2), scalar(4), scalar(5)});
  CHECK(keys(s2.S) == std::set<std::int64_t>{-2, -1, 0, 3});
  CHECK(s2.S.at(scalar(-1)) == scalar(3));
  CHECK(tower_invariants_hold(s2));

  auto t2 = tower_step(tower_start(3));
  CHECK(t2.B.size() == 9);
  CHECK(t2.S.size() == 6);

  for (int k = 1; k <= 4; ++k) {
    auto s = tower_start(k);
    for (int level = 2; level <= 6; ++level) {
      s = tower_step(s);
      CHECK(tower_invariants_hold(s));
      std::set<std::int64_t> B, S;
      for (const auto& b : s.B) B.insert(to_int64(b[0]));
      for (const auto& [x, r] : s.S) {
        bool ok = true;
        for (int i = 1; i <= k; ++i) ok = ok && B.count(to_int64(x[0]) + to_int64(r[0]) * i);
        CHECK(ok);
      }
    }
  }
}

TEST_CASE("random translates") {
  CHECK(random_translate_cover({1, 3, 5}, 6) == std::vector<std::int64_t>{0, 1});
  CHECK(random_translate_cover({1, 2, 3, 4, 5}, 5) == std::vector<std::int64_t>{0});
  CHECK(random_translate_cover({1}, 4) == std::vector<std::int64_t>{0, 1, 2, 3});

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    std::int64_t X = 5 + static_cast<std::int64_t>(rng() % 60);
    std::set<std::int64_t> S;
    std::size_t want = 1 + rng() % 6;
    while (S.size() < want) S.insert(1 + static_cast<std::int64_t>(rng() % X));
    for (auto mode : {TranslateMode::Greedy, TranslateMode::Randomized}) {
      auto T = random_translate_cover(S, X, mode, rng());
      std::set<std::int64_t> hit;
      for (auto s : S)
        for (auto t : T) hit.insert(s + t);
      for (std::int64_t x = 1; x <= X; ++x) CHECK(hit.count(x));
      if (mode == TranslateMode::Greedy) CHECK(static_cast<double>(T.size()) <= translate_bound(S.size(), X));
    }
  }
}

TEST_CASE("projections") {
  auto A = pts2({{0, 0}, {2, 1}, {1, 2}});
  CHECK(project(A, Rational(-1)) == std::set<Rational>{-1, 0, 1});
  CHECK(project(A, Rational(1)) == std::set<Rational>{0, 3});
  CHECK(project(A, std::nullopt) == std::set<Rational>{0, 1, 2});
  for (long s = -3; s <= 3; ++s) {
    std::set<Point2> shifted;
    for (const auto& [x, y] : A) shifted.emplace(BigInt(x + s), y);
    std::set<Rational> want;
    for (const auto& v : project(A, Rational(1, 2))) want.insert(v + s);
    CHECK(project(shifted, Rational(1, 2)) == want);
  }
}

TEST_CASE("phi_t injectivity agrees with enumeration") {
  std::set<Rational> P{0, 1, 3};
  for (int n = 1; n <= 4; ++n)
    for (std::int64_t t = 1; t <= 8; ++t) {
      std::set<std::int64_t> images;
      std::int64_t total = 1;
      for (int i = 0; i < n; ++i) total *= 3;
      for (std::int64_t code = 0; code < total; ++code) {
        std::int64_t c = code, v = 0, pw = t;
        for (int i = 0; i < n; ++i, c /= 3, pw *= t) v += std::vector<std::int64_t>{0, 1, 3}[c % 3] * pw;
        images.insert(v);
      }
      CHECK(phi_t_injective(P, n, t) == (static_cast<std::int64_t>(images.size()) == total));
    }
}

TEST_CASE("amplification of the three point system") {
  ProjectionSystem sys{pts2({{0, 0}, {2, 1}, {1, 2}}), {Rational(1)}};
  for (long M : {2, 10}) {
    auto r = amplify(sys, Rational(1, 2), BigInt(M));
    // smallest n with (9/8)^n > M^2
    int want = 1;
    while (std::pow(9.0 / 8.0, want) <= double(M) * double(M)) ++want;
    CHECK(r.n == want);
    CHECK(r.post_holds);
    CHECK(r.distinguished == big_pow(3, r.n));
    CHECK(r.slope_sizes[0] == big_pow(2, r.n));
  }
  CHECK(amplify(sys, Rational(1, 2), BigInt(2)).n == 12);
  CHECK(amplify(sys, Rational(1, 2), BigInt(10)).n == 40);

  auto one = amplify(sys, Rational(1, 2), BigInt(1), 1);
  REQUIRE(one.B_prime);
  CHECK(one.t == 1);
  CHECK(*one.B_prime == sys.B);

  auto small = amplify(sys, Rational(1, 2), BigInt(1), 4);
  REQUIRE(small.B_prime);
  CHECK(project(*small.B_prime, Rational(-1)).size() == 81);
  CHECK(project(*small.B_prime, Rational(1)).size() == 16);

  try {
    amplify(sys, Rational(2), BigInt(2));
    FAIL("expected HypothesisFails");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HypothesisFails);
  }
}

TEST_CASE("encoding to one dimension") {
  CHECK(encode_nd_to_1d(std::vector<std::int64_t>{1, 2}, 2, 3) == 7260);
  auto ap = encode_nd_to_1d({{0, 0}, {1, 1}}, 2, 3);
  CHECK(ap == std::vector<BigInt>{0, 3660});
  std::set<BigInt> images;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b) images.insert(encode_nd_to_1d(std::vector<std::int64_t>{a, b}, 2, 3));
  CHECK(images.size() == 16);
  CHECK_THROWS_AS(encode_nd_to_1d(std::vector<std::int64_t>{30, 0}, 2, 3), Error);

  // an AP cover in Z^2 for differences in [1,2]^2 maps to one in Z with equal size
  std::vector<std::vector<std::int64_t>> A;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b) A.push_back({a, b});
  auto img = encode_nd_to_1d(A, 2, 2);
  std::set<BigInt> S(img.begin(), img.end());
  CHECK(S.size() == A.size());
  for (std::int64_t d1 = 1; d1 <= 2; ++d1)
    for (std::int64_t d2 = 1; d2 <= 2; ++d2) {
      BigInt fd = encode_nd_to_1d(std::vector<std::int64_t>{d1, d2}, 2, 2);
      BigInt base = encode_nd_to_1d(std::vector<std::int64_t>{0, 0}, 2, 2);
      CHECK(S.count(BigInt(base + fd)));
      CHECK(S.count(BigInt(base + 2 * fd)));
    }
}

TEST_CASE("phi theta arithmetic") {
  CHECK(phi_theta(Rational(3, 10), 10, BigInt(7)) == 1);
  // theta = 1/4 exactly as a dyadic
  CHECK(phi_theta(std::uint64_t{1} << 62, 10, BigInt(3)) == 7);
  CHECK(phi_theta(std::uint64_t{1} << 62, 10, BigInt(-1)) == 7);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 3000; ++t) {
    std::uint64_t m = rng();
    std::int64_t N = 2 + static_cast<std::int64_t>(rng() % 50);
    BigInt x(static_cast<long>(rng() % 100000) - 50000), y(static_cast<long>(rng() % 100000) - 50000);
    auto d = phi_theta(m, N, BigInt(x + y)) - phi_theta(m, N, x) - phi_theta(m, N, y);
    CHECK((d == 0 || d == 1 || d == -N || d == 1 - N));
    Rational theta(BigInt(static_cast<unsigned long>(m)), BigInt(1) << 64);
    CHECK(phi_theta(theta, N, x) == phi_theta(m, N, x));
  }
}

TEST_CASE("phi theta reduction of a tower cover") {
  auto s = tower_step(tower_start(2));
  auto U = PatternFamily::progression(2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto r = phi_theta_reduce(U, {s.B, s.S}, 4, seed, true);
    CHECK(r.images.size() >= 2);
    CHECK(r.collisions <= 3);
    for (const auto& [x, sc] : r.images) {
      CHECK(x >= 0);
      CHECK(x <= 3);
      CHECK(r.A3.count(x + sc));
      CHECK(r.A3.count(x + 2 * sc));
    }
    CHECK(r.A3.size() <= 9 * s.B.size());
    for (std::int64_t x = 1; x <= 4; ++x) {
      bool ok = false;
      for (auto t : r.T)
        for (const auto& [b, sc] : r.images) ok = ok || (b + t == x && r.A1.count(x + sc) && r.A1.count(x + 2 * sc));
      CHECK(ok);
    }
  }
}
