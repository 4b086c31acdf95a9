#include "doctest.h"
#include "oracle.hpp"
#include "patcover/error.hpp"
#include "patcover/pattern.hpp"

using namespace patcover;

namespace {

PointSet ints(std::initializer_list<long> xs) {
  PointSet s;
  for (long x : xs) s.insert(scalar(x));
  return s;
}

std::set<std::int64_t> keys(const std::map<Element, Element>& m) {
  std::set<std::int64_t> out;
  for (const auto& kv : m) out.insert(to_int64(kv.first[0]));
  return out;
}

}  // namespace

TEST_CASE("instantiate over each ring") {
  CHECK(instantiate_pattern(scalar(10), scalar(2), PatternFamily::integers({1, 2, 3})) == ints({12, 14, 16}));

  PatternFamily gauss(RingContext::cyclotomic(4), {vec({1, 1})});
  CHECK(instantiate_pattern(vec({0, 0}), vec({0, 1}), gauss) == PointSet{vec({-1, 1})});

  PatternFamily ff(RingContext::finite_field(7), {scalar(1), scalar(2)});
  CHECK(instantiate_pattern(scalar(3), scalar(5), ff) == ints({1, 6}));

  CHECK_THROWS_AS(instantiate_pattern(scalar(1), scalar(0), PatternFamily::integers({1})), Error);
  CHECK_THROWS_AS(instantiate_pattern(RingContext::rationals(), scalar(1), scalar(1), PatternFamily::integers({1})),
                  Error);
}

TEST_CASE("families reject zeros, zero coordinates and duplicates") {
  CHECK_THROWS_AS(PatternFamily::integers({0, 1}), Error);
  CHECK_THROWS_AS(PatternFamily(RingContext::cyclotomic(4), {vec({1, 0})}), Error);
  try {
    PatternFamily::integers({3, 3});
    FAIL("expected duplicate error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicateElements);
  }
}

TEST_CASE("basepoints covered by {1,2,4} agree with enumeration") {
  auto B = ints({1, 2, 4});
  auto got = keys(basepoints_covered(B, PatternFamily::integers({1, 2}), ScaleDomain::nonzero()));
  auto want = oracle::covered({1, 2, 4}, {1, 2}, oracle::range_nonzero(-20, 20), 40);
  CHECK(got == want);
  CHECK(got == std::set<std::int64_t>{-2, 0, 3, 6, 7});
}

TEST_CASE("positive scales on {2,3,4}") {
  auto got = basepoints_covered(ints({2, 3, 4}), PatternFamily::integers({1, 2}), ScaleDomain::positive());
  CHECK(keys(got) == oracle::covered({2, 3, 4}, {1, 2}, oracle::range_nonzero(1, 20), 40));
  CHECK(keys(got) == std::set<std::int64_t>{0, 1, 2});
  CHECK(got.at(scalar(0)) == scalar(2));
  CHECK(basepoints_covered({}, PatternFamily::integers({1, 2}), ScaleDomain::nonzero()).empty());
}

TEST_CASE("singleton family needs a finite scale domain") {
  auto U = PatternFamily::integers({1});
  CHECK_THROWS_AS(basepoints_covered(ints({5}), U, ScaleDomain::nonzero()), Error);
  auto got = basepoints_covered(ints({5}), U, ScaleDomain::range(-3, 3));
  CHECK(keys(got) == oracle::covered({5}, {1}, oracle::range_nonzero(-3, 3), 20));
}

TEST_CASE("translation and scaling equivariance on random sets") {
  std::uint64_t s = 12345;
  auto next = [&] { return (s = s * 6364136223846793005ULL + 1442695040888963407ULL) >> 33; };
  auto U = PatternFamily::integers({1, 3, 4});
  for (int trial = 0; trial < 40; ++trial) {
    PointSet B;
    std::set<std::int64_t> raw;
    for (int i = 0; i < 8; ++i) raw.insert(static_cast<std::int64_t>(next() % 25) - 12);
    for (auto x : raw) B.insert(scalar(static_cast<long>(x)));
    auto base = keys(basepoints_covered(B, U, ScaleDomain::range(-6, 6)));
    CHECK(base == oracle::covered(raw, {1, 3, 4}, oracle::range_nonzero(-6, 6), 60));

    const long t = static_cast<long>(next() % 11) - 5;
    PointSet Bt;
    for (const auto& b : B) Bt.insert(scalar(Rational(b[0] + t)));
    std::set<std::int64_t> shifted;
    for (auto x : base) shifted.insert(x + t);
    CHECK(keys(basepoints_covered(Bt, U, ScaleDomain::range(-6, 6))) == shifted);

    const long lam = (trial % 2) ? 3 : -2;
    PointSet Bl;
    for (const auto& b : B) Bl.insert(scalar(Rational(b[0] * lam)));
    std::set<std::int64_t> scaled;
    for (auto x : base) scaled.insert(x * lam);
    auto lam_abs = lam < 0 ? -lam : lam;
    CHECK(keys(basepoints_covered(Bl, U, ScaleDomain::range(-6 * lam_abs, 6 * lam_abs))) == scaled);
  }
}

TEST_CASE("instances have |U| points over the integers and rationals") {
  auto H = PatternFamily::harmonic(5);
  for (long r = -7; r <= 7; ++r) {
    if (r == 0) continue;
    CHECK(instantiate_pattern(scalar(Rational(1, 3)), scalar(Rational(r, 2)), H).size() == 5);
    CHECK(instantiate_pattern(scalar(4), scalar(r), PatternFamily::integers({-3, 1, 2, 9})).size() == 4);
  }
}

TEST_CASE("finite field collisions are not patterns") {
  PatternFamily U(RingContext::finite_field(3), {scalar(1), scalar(4)});
  PointSet all = ints({0, 1, 2});
  CHECK_FALSE(pattern_inside(all, scalar(0), scalar(1), U));
  CHECK(basepoints_covered(all, U, ScaleDomain::nonzero()).empty());
}

TEST_CASE("normalize rational families") {
  auto n = normalize_to_integers(PatternFamily::harmonic(3));
  CHECK(n.c == 6);
  CHECK(n.family == PatternFamily::integers({6, 3, 2}));
  auto m = normalize_to_integers(PatternFamily::integers({3, 4, 6}));
  CHECK(m.c == 1);
  CHECK(m.family == PatternFamily::integers({3, 4, 6}));

  // {pq, q, 2pq/(p+1)} is distinct for every p, q >= 2 scanned; p = 1 collapses pq and 2pq/(p+1).
  for (long q = 1; q <= 12; ++q)
    for (long p = 1; p <= 12; ++p) {
      std::vector<Element> es{scalar(p * q), scalar(q), scalar(Rational(2 * p * q, p + 1))};
      bool distinct = es[0] != es[1] && es[0] != es[2] && es[1] != es[2];
      if (distinct)
        CHECK_NOTHROW(PatternFamily(RingContext::rationals(), es));
      else
        CHECK_THROWS_AS(PatternFamily(RingContext::rationals(), es), Error);
      if (p == 1) CHECK_FALSE(distinct);
    }
  CHECK(normalize_to_integers(PatternFamily(RingContext::rationals(), {scalar(15), scalar(3), scalar(5)})).c == 1);
}

TEST_CASE("harmonic and arithmetic transfer") {
  WitnessedCover h;
  h.points = {scalar(3), scalar(Rational(5, 2))};
  h.witnesses = {{scalar(2), scalar(1)}};
  auto a = harmonic_to_arithmetic(2, h);
  CHECK(a.points == ints({3, 5}));
  CHECK(a.witnesses.at(scalar(2)) == scalar(1));

  WitnessedCover ap;
  ap.points = ints({2, 3});
  ap.witnesses = {{scalar(1), scalar(1)}};
  auto back = arithmetic_to_harmonic(2, ap);
  CHECK(back.cover.points == PointSet{scalar(2), scalar(Rational(3, 2))});
  CHECK(back.shift == 0);

  WitnessedCover zero;
  zero.points = ints({1, 2});
  zero.witnesses = {{scalar(1), scalar(0)}};
  auto shifted = arithmetic_to_harmonic(2, zero);
  CHECK(shifted.shift == 1);

  WitnessedCover bad = h;
  bad.witnesses = {{scalar(2), scalar(3)}};
  CHECK_THROWS_AS(harmonic_to_arithmetic(2, bad), Error);

  WitnessedCover one;
  one.points = ints({4, 7});
  one.witnesses = {{scalar(1), scalar(3)}, {scalar(2), scalar(5)}};
  CHECK(harmonic_to_arithmetic(1, one).points == one.points);
}

TEST_CASE("round trip stays within k^2 growth") {
  for (int k = 2; k <= 4; ++k) {
    WitnessedCover h;
    for (long x = 1; x <= 5; ++x) {
      Rational r(x + 1);
      h.witnesses.emplace(scalar(x), scalar(r));
      for (int i = 1; i <= k; ++i) h.points.insert(scalar(Rational(x + r / i)));
    }
    auto a = harmonic_to_arithmetic(k, h);
    auto back = arithmetic_to_harmonic(k, a);
    CHECK(failed_basepoints(back.cover, PatternFamily::harmonic(k)).empty());
    CHECK(back.cover.witnesses.size() == h.witnesses.size());
    CHECK(back.cover.points.size() <= static_cast<std::size_t>(k * k) * h.points.size());
  }
}

TEST_CASE("factorial embedding holds exhaustively") {
  CHECK(factorial_embed_check(0, 1, 3));
  CHECK(factorial_embed_check(5, -2, 2));
  CHECK(factorial_embed_check(0, 1, 1));
  bool all = true;
  for (int k = 1; k <= 8; ++k)
    for (std::int64_t r = -50; r <= 50; ++r)
      for (std::int64_t x = -50; x <= 50 && r != 0; ++x) all = all && factorial_embed_check(x, r, k);
  CHECK(all);
}
