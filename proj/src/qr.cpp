#include "patcover/qr.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "patcover/error.hpp"
#include "patcover/rng.hpp"

namespace patcover {

namespace {

IntVec gauss_mul(int n, const IntVec& r, const IntVec& u) {
  auto p = otimes_coeffs<__int128>(n, {r.begin(), r.end()}, {u.begin(), u.end()});
  IntVec out;
  for (auto v : p) {
    if (v > INT64_MAX || v < INT64_MIN) fail(ErrorCode::OutOfRange, "product exceeds 64 bits");
    out.push_back(static_cast<std::int64_t>(v));
  }
  return out;
}

std::int64_t sup(const IntVec& v) {
  std::int64_t m = 0;
  for (auto c : v) m = std::max<std::int64_t>(m, c < 0 ? -c : c);
  return m;
}

using Key = std::array<std::int64_t, 2>;

Key key_of(const IntVec& v) { return {v[0], v.size() > 1 ? v[1] : 0}; }

std::vector<Key> sorted_keys(const std::vector<IntVec>& S) {
  std::vector<Key> keys;
  keys.reserve(S.size());
  for (const auto& s : S) keys.push_back(key_of(s));
  std::sort(keys.begin(), keys.end());
  return keys;
}

bool all_zero(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](auto c) { return c == 0; });
}

// Visits {lo..Q-1}^d in lexicographic order.
template <class F>
void for_each_digit(int d, std::int64_t lo, std::int64_t Q, F&& f) {
  IntVec x(d, lo);
  if (lo >= Q) return;
  while (true) {
    f(static_cast<const IntVec&>(x));
    int i = d - 1;
    while (i >= 0 && ++x[i] == Q) x[i--] = lo;
    if (i < 0) return;
  }
}

IntVec square_mod(int n, const IntVec& x, std::int64_t q) {
  IntVec red;
  for (auto c : x) red.push_back(mod_floor(c, q));
  auto s = otimes_coeffs<__int128>(n, {red.begin(), red.end()}, {red.begin(), red.end()});
  IntVec out;
  for (auto v : s) out.push_back(static_cast<std::int64_t>(((v % q) + q) % q));
  return out;
}

}  // namespace

std::int64_t QrParams::Q() const { return to_int64(ps.Q); }

bool QrParams::counting_aside_holds() const {
  return std::pow(static_cast<double>(f_k), d()) >= static_cast<double>(U.size());
}

QrParams make_qr_params(int n, std::vector<IntVec> U, PrimeSystem ps, QrDomain domain) {
  CyclotomicRing ring(n);
  if (ps.n != n) fail(ErrorCode::RingMismatch, "prime system belongs to another ring");
  if (U.empty()) fail(ErrorCode::InvalidArgument, "empty family");
  std::int64_t f = 0;
  for (const auto& u : U) {
    if (static_cast<int>(u.size()) != ring.d) fail(ErrorCode::ArityMismatch, "family element has the wrong arity");
    for (auto c : u)
      if (c == 0) fail(ErrorCode::InvalidArgument, "family elements need nonzero coordinates");
    f = std::max(f, sup(u));
  }
  std::sort(U.begin(), U.end());
  if (std::adjacent_find(U.begin(), U.end()) != U.end()) fail(ErrorCode::DuplicateElements, "repeated family element");
  for (auto q : ps.primes)
    if (q <= f) fail(ErrorCode::InvalidArgument, "prime " + std::to_string(q) + " does not exceed f_k = " + std::to_string(f));
  if (ps.Q > BigInt("4611686018427387904")) fail(ErrorCode::TooLarge, "Q exceeds 2^62");
  return {n, std::move(U), std::move(ps), f, domain};
}

QrParams qr_params_standard(int n, std::vector<IntVec> U, QrDomain domain) {
  std::int64_t f = 1;
  for (const auto& u : U) f = std::max(f, sup(u));
  if (f > 64) fail(ErrorCode::TooLarge, "f_k too large for the standard prime range");
  auto ps = find_prime_system(n, n == 4 ? 3 : 1, static_cast<int>(f), static_cast<int>(2 * f));
  return make_qr_params(n, std::move(U), std::move(ps), domain);
}

IntVec qr_scale(const IntVec& x, const PrimeSystem& ps) {
  if (static_cast<int>(x.size()) != ps.d()) fail(ErrorCode::ArityMismatch, "basepoint has the wrong arity");
  std::vector<Residue> res;
  for (auto q : ps.primes) res.push_back(square_mod(ps.n, x, q));
  IntVec out;
  for (const auto& c : crt_lift(res, ps)) out.push_back(to_int64(c));
  return out;
}

bool verify_digit_cover(const DigitCover& c) {
  if (c.d < 1 || c.d > 2) fail(ErrorCode::InvalidArgument, "digit covers live in dimension 1 or 2");
  const auto keys = sorted_keys(c.S);
  bool ok = true;
  auto check = [&](const IntVec& x) {
    if (!ok) return;
    IntVec r = c.scale(x);
    if (all_zero(r)) {
      ok = false;
      return;
    }
    for (const auto& u : c.U) {
      IntVec p = gauss_mul(c.n, u, r);
      for (int i = 0; i < c.d; ++i) p[i] += x[i];
      if (!std::binary_search(keys.begin(), keys.end(), key_of(p))) ok = false;
    }
  };
  for_each_digit(c.d, c.all_digits ? 0 : 1, c.Q, check);
  return ok;
}

QrCover build_qr_cover(const QrParams& params, std::size_t max_basepoints) {
  const int d = params.d(), n = params.n;
  const std::int64_t Q = params.Q();
  if (std::pow(static_cast<double>(Q), d) > static_cast<double>(max_basepoints))
    fail(ErrorCode::TooLarge, "Q^d = " + std::to_string(Q) + "^" + std::to_string(d) + " basepoints exceeds the limit");

  // r = sum_i basis_i * res_i mod Q with basis_i = 1 mod q_i, 0 mod q_j
  std::vector<std::int64_t> basis;
  for (auto q : params.ps.primes) {
    std::int64_t co = Q / q;
    basis.push_back(static_cast<std::int64_t>(static_cast<__int128>(co) * mod_inverse(mod_floor(co, q), q) % Q));
  }
  const auto primes = params.ps.primes;
  auto fast_scale = [=](const IntVec& x) {
    IntVec r(d, 0);
    for (std::size_t i = 0; i < primes.size(); ++i) {
      const std::int64_t q = primes[i];
      std::int64_t a = mod_floor(x[0], q), s0, s1 = 0;
      if (d == 1) {
        s0 = a * a % q;
      } else {
        std::int64_t b = mod_floor(x[1], q);
        s0 = mod_floor(a * a - b * b, q);
        s1 = 2 * a * b % q;
      }
      r[0] = static_cast<std::int64_t>((r[0] + static_cast<__int128>(basis[i]) * s0) % Q);
      if (d == 2) r[1] = static_cast<std::int64_t>((r[1] + static_cast<__int128>(basis[i]) * s1) % Q);
    }
    if (all_zero(r)) r[0] = 1;  // x = 0 mod Q
    return r;
  };

  QrCover out;
  out.params = params;
  auto& cov = out.cover;
  cov.n = n;
  cov.d = d;
  cov.Q = Q;
  cov.U = params.U;
  cov.all_digits = params.domain == QrDomain::AllResidues;
  cov.scale = fast_scale;

  std::vector<Key> pts;
  pts.reserve(static_cast<std::size_t>(std::pow(static_cast<double>(Q), d)) * params.U.size());
  for_each_digit(d, cov.all_digits ? 0 : 1, Q, [&](const IntVec& x) {
    ++out.basepoints;
    bool zero_div = false;
    for (auto q : primes)
      if (std::all_of(x.begin(), x.end(), [&](auto c) { return c % q == 0; })) zero_div = true;
    out.zero_divisor += zero_div;
    if (std::all_of(x.begin(), x.end(), [&](auto c) { return c % Q == 0; })) ++out.fallback;
    IntVec r = fast_scale(x);
    for (const auto& u : params.U) {
      IntVec p = gauss_mul(n, u, r);
      for (int c = 0; c < d; ++c) p[c] += x[c];
      pts.push_back(key_of(p));
    }
  });
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  cov.S.reserve(pts.size());
  for (const auto& k : pts) cov.S.push_back(d == 1 ? IntVec{k[0]} : IntVec{k[0], k[1]});

  const double k = static_cast<double>(params.U.size());
  double prod = 1;
  for (auto q : primes) {
    const auto qd = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(q), d)));
    std::vector<char> seen(qd, 0);
    std::size_t count = 0;
    for (const auto& s : cov.S) {
      std::size_t idx = 0;
      for (auto c : s) idx = idx * static_cast<std::size_t>(q) + static_cast<std::size_t>(mod_floor(c, q));
      if (!seen[idx]) seen[idx] = 1, ++count;
    }
    out.projection_sizes.push_back(count);
    out.projection_limits.push_back(params.U.size() * (qd + 1) / 2 + params.U.size());
    prod *= 1 + 1 / static_cast<double>(qd);
  }
  const double Qd = std::pow(static_cast<double>(Q), d);
  out.bound_shape = k * k * std::pow(static_cast<double>(params.f_k), d) * std::pow(2.0, -static_cast<double>(primes.size())) * Qd * prod;
  out.ratio = static_cast<double>(cov.S.size()) / Qd;
  out.exponent = std::log(static_cast<double>(cov.S.size())) / std::log(static_cast<double>(Q));

  // the fast lift must agree with the generic CRT lift
  bool lift_ok = true;
  if (Qd <= 1e5) {
    for_each_digit(d, 1, Q, [&](const IntVec& x) { lift_ok = lift_ok && qr_scale(x, params.ps) == fast_scale(x); });
  } else {
    auto rng = make_rng(Q, "qr-lift");
    std::uniform_int_distribution<std::int64_t> dist(1, Q - 1);
    for (int t = 0; t < 2000 && lift_ok; ++t) {
      IntVec x(d);
      for (auto& c : x) c = dist(rng);
      lift_ok = qr_scale(x, params.ps) == fast_scale(x);
    }
  }
  out.verified = lift_ok && verify_digit_cover(cov);
  return out;
}

PowerExtendResult power_extend(const DigitCover& c, int q_exp, std::uint64_t seed, std::size_t samples,
                               std::size_t max_points) {
  if (q_exp < 1) fail(ErrorCode::InvalidArgument, "exponent must be >= 1");
  if (q_exp > 1 && !c.all_digits) fail(ErrorCode::InvalidCover, "powering needs a pattern at every residue digit, zero included");
  PowerExtendResult out;
  const double size_bound = std::pow(static_cast<double>(c.S.size()), q_exp);
  if (size_bound > static_cast<double>(max_points)) fail(ErrorCode::TooLarge, "|S|^q exceeds the point limit");
  std::int64_t smax = 1;
  for (const auto& s : c.S) smax = std::max(smax, sup(s));
  if (std::pow(static_cast<double>(c.Q), q_exp) * static_cast<double>(smax) * 2 > 9e18)
    fail(ErrorCode::TooLarge, "coordinates exceed 64 bits");
  std::int64_t N = 1;
  for (int i = 0; i < q_exp; ++i) N *= c.Q;
  out.N = N;

  std::vector<IntVec> A{IntVec(c.d, 0)};
  std::int64_t place = 1;
  for (int i = 0; i < q_exp; ++i) {
    std::vector<IntVec> next;
    next.reserve(A.size() * c.S.size());
    for (const auto& a : A)
      for (const auto& s : c.S) {
        IntVec v(c.d);
        for (int t = 0; t < c.d; ++t) v[t] = a[t] + s[t] * place;
        next.push_back(std::move(v));
      }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    A = std::move(next);
    place *= c.Q;
  }
  out.A = std::move(A);
  out.exponent = std::log(static_cast<double>(out.A.size())) / std::log(static_cast<double>(N));
  out.base_exponent = std::log(static_cast<double>(c.S.size())) / std::log(static_cast<double>(c.Q));

  auto check = [&](const IntVec& x) {
    if (all_zero(x)) return;
    ++out.checked;
    // digits of x, their scales, and the combined scale R = sum r_i Q^i
    IntVec R(c.d, 0);
    std::vector<IntVec> digits, scales;
    IntVec rest = x;
    bool ok = true;
    std::int64_t pl = 1;
    for (int i = 0; i < q_exp; ++i) {
      IntVec dig(c.d);
      for (int t = 0; t < c.d; ++t) dig[t] = rest[t] % c.Q, rest[t] /= c.Q;
      if (!c.all_digits && std::any_of(dig.begin(), dig.end(), [](auto v) { return v == 0; })) ok = false;
      IntVec r = ok ? c.scale(dig) : IntVec(c.d, 0);
      for (int t = 0; t < c.d; ++t) R[t] += r[t] * pl;
      digits.push_back(dig);
      scales.push_back(r);
      pl *= c.Q;
    }
    if (!ok || all_zero(R)) {
      ++out.failures;
      return;
    }
    for (const auto& u : c.U) {
      IntVec p(c.d, 0);
      std::int64_t place_i = 1;
      for (int i = 0; i < q_exp; ++i) {
        IntVec s = gauss_mul(c.n, u, scales[i]);
        for (int t = 0; t < c.d; ++t) p[t] += (digits[i][t] + s[t]) * place_i;
        place_i *= c.Q;
      }
      // the same point written as x + u (x) R
      IntVec direct = gauss_mul(c.n, u, R);
      for (int t = 0; t < c.d; ++t) direct[t] += x[t];
      if (p != direct || !std::binary_search(out.A.begin(), out.A.end(), p)) {
        ++out.failures;
        return;
      }
    }
  };
  const std::int64_t lo = (q_exp == 1 && !c.all_digits) ? 1 : 0;
  if (std::pow(static_cast<double>(N), c.d) <= 1e5) {
    out.exhaustive = true;
    for_each_digit(c.d, lo, N, check);
  } else {
    auto rng = make_rng(seed, "power-extend");
    std::uniform_int_distribution<std::int64_t> dist(lo, N - 1);
    for (std::size_t t = 0; t < samples; ++t) {
      IntVec x(c.d);
      for (auto& v : x) v = dist(rng);
      check(x);
    }
  }
  return out;
}

RotatedPolygonCover rotated_polygon_cover(int k, std::int64_t N_max, std::size_t max_basepoints) {
  if (k < 3) fail(ErrorCode::InvalidArgument, "a polygon needs k >= 3");
  RotatedPolygonCover out;
  out.k = k;
  const double pi = std::numbers::pi;
  for (std::int64_t R = static_cast<std::int64_t>(std::ceil(k / pi));; ++R) {
    std::vector<IntVec> V;
    double dist = 0;
    for (int j = 0; j < k; ++j) {
      double x = R * std::cos(2 * pi * j / k), y = R * std::sin(2 * pi * j / k);
      IntVec v{std::llround(x), std::llround(y)};
      dist = std::max(dist, std::hypot(v[0] - x, v[1] - y) / R);
      V.push_back(v);
    }
    std::set<IntVec> distinct(V.begin(), V.end());
    if (distinct.size() != V.size()) continue;
    std::int64_t g = 0;
    for (const auto& v : V) g = std::gcd(g, std::gcd(v[0], v[1]));
    for (auto& v : V) v[0] /= g, v[1] /= g;
    out.vertices = V;
    out.distortion = dist;
    out.radius = R;
    break;
  }

  // smallest Gaussian w (by norm, then lexicographic) with every coordinate of v (x) w nonzero
  std::vector<IntVec> cands;
  for (std::int64_t a = 1; a <= 8; ++a)
    for (std::int64_t b = 0; b <= 8; ++b) cands.push_back({a, b});
  std::stable_sort(cands.begin(), cands.end(),
                   [](const IntVec& x, const IntVec& y) { return x[0] * x[0] + x[1] * x[1] < y[0] * y[0] + y[1] * y[1]; });
  std::vector<IntVec> U;
  for (const auto& w : cands) {
    U.clear();
    bool ok = true;
    for (const auto& v : out.vertices) {
      IntVec p = gauss_mul(4, v, w);
      if (p[0] == 0 || p[1] == 0) ok = false;
      U.push_back(p);
    }
    if (ok) {
      out.rotation = w;
      break;
    }
  }
  if (out.rotation.empty()) fail(ErrorCode::InvalidArgument, "no small rotation clears the zero coordinates");

  std::int64_t f = 0;
  for (const auto& u : U) f = std::max(f, sup(u));
  std::vector<std::int64_t> primes;
  double Q = 1;
  for (std::int64_t p = f + 1;; ++p) {
    if (p % 4 != 3 || !is_prime(p)) continue;
    if (!primes.empty() && (Q * p) * (Q * p) > static_cast<double>(max_basepoints)) break;
    primes.push_back(p);
    Q *= static_cast<double>(p);
  }
  auto params = make_qr_params(4, U, prime_system_from(4, primes), QrDomain::AllResidues);
  out.cover = build_qr_cover(params, std::max<std::size_t>(max_basepoints, static_cast<std::size_t>(Q * Q)));

  const double S = static_cast<double>(out.cover.cover.S.size());
  std::int64_t N = 1;
  for (int q = 1; N < N_max || q == 1; ++q) {
    if (N > INT64_MAX / params.Q()) break;
    N *= params.Q();
    out.table.push_back({q, N, std::pow(S, q), std::log(S) / std::log(static_cast<double>(params.Q()))});
  }
  return out;
}

Handoff attractor_handoff(const std::vector<IntVec>& S, std::int64_t Q) {
  if (S.empty()) fail(ErrorCode::InvalidArgument, "empty digit set");
  if (Q < 2) fail(ErrorCode::InvalidArgument, "base must be >= 2");
  const std::size_t d = S.front().size();
  IntVec shift(d, INT64_MAX), top(d, INT64_MIN);
  for (const auto& s : S) {
    if (s.size() != d) fail(ErrorCode::InvalidArgument, "digits have mixed dimensions");
    for (std::size_t i = 0; i < d; ++i) shift[i] = std::min(shift[i], s[i]), top[i] = std::max(top[i], s[i]);
  }
  for (std::size_t i = 0; i < d; ++i)
    if (shift[i] > 0 && top[i] < Q) shift[i] = 0;
  std::vector<IntVec> digits;
  for (const auto& s : S) {
    IntVec v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = s[i] - shift[i];
    digits.push_back(std::move(v));
  }
  Handoff out{make_digit_system(Q, std::move(digits), 1), shift, 0, false};
  out.digits_in_range = out.system.osc_certified();
  out.dimension = std::log(static_cast<double>(S.size())) / std::log(static_cast<double>(Q));
  return out;
}

}  // namespace patcover
