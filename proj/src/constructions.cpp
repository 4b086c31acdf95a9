#include "patcover/constructions.hpp"

#include <algorithm>
#include <cmath>

#include "patcover/error.hpp"
#include "patcover/rng.hpp"

namespace patcover {

PowersOfTwo powers_of_two_cover(int m) {
  if (m < 2) fail(ErrorCode::InvalidArgument, "m must be >= 2");
  PowersOfTwo out;
  for (int i = 0; i < m; ++i) out.B.insert(scalar(Rational(big_pow(2, static_cast<unsigned long>(i)))));
  out.covered = basepoints_covered(out.B, PatternFamily::integers({1, 2}), ScaleDomain::nonzero());
  return out;
}

TowerState tower_start(int k) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be >= 1");
  TowerState s;
  s.k = k;
  for (int i = 1; i <= k; ++i) s.B.insert(scalar(i));
  s.S.emplace(scalar(0), scalar(1));
  return s;
}

TowerState tower_step(const TowerState& state) {
  const Rational t = state.B.rbegin()->at(0) - state.S.begin()->first.at(0) + 1;
  TowerState next;
  next.level = state.level + 1;
  next.k = state.k;
  next.t_history = state.t_history;
  next.t_history.push_back(to_int64(t));
  for (int j = 0; j < state.k; ++j) {
    const Rational shift = t * j;
    for (const auto& b : state.B) next.B.insert(scalar(Rational(b[0] + shift)));
    for (const auto& [s, r] : state.S) next.S.emplace(scalar(Rational(s[0] + shift)), r);
  }
  for (const auto& b : state.B) next.S.emplace(scalar(Rational(b[0] - t)), scalar(t));
  if (!tower_invariants_hold(next)) fail(ErrorCode::InvalidCover, "tower step failed verification");
  return next;
}

bool tower_invariants_hold(const TowerState& state) {
  BigInt kl = big_pow(state.k, static_cast<unsigned long>(state.level));
  BigInt sl = big_pow(state.k, static_cast<unsigned long>(state.level - 1)) * state.level;
  if (BigInt(static_cast<unsigned long>(state.B.size())) != kl) return false;
  if (BigInt(static_cast<unsigned long>(state.S.size())) != sl) return false;
  return failed_basepoints({state.B, state.S}, PatternFamily::progression(state.k)).empty();
}

double translate_bound(std::size_t s_size, std::int64_t X) {
  return 4.0 * (static_cast<double>(X) / static_cast<double>(s_size)) * std::max(1.0, std::log(static_cast<double>(X)));
}

std::vector<std::int64_t> random_translate_cover(const std::set<std::int64_t>& S, std::int64_t X, TranslateMode mode,
                                                 std::uint64_t seed) {
  if (S.empty()) fail(ErrorCode::InvalidArgument, "S must be nonempty");
  if (X < 1) fail(ErrorCode::InvalidArgument, "X must be >= 1");
  const std::int64_t t_lo = 1 - *S.rbegin(), t_hi = X - *S.begin();
  std::vector<char> done(static_cast<std::size_t>(X) + 1, 0);
  std::int64_t remaining = X;
  std::vector<std::int64_t> T;
  auto gain = [&](std::int64_t t) {
    std::int64_t g = 0;
    for (auto s : S) {
      auto v = s + t;
      if (v >= 1 && v <= X && !done[v]) ++g;
    }
    return g;
  };
  auto take = [&](std::int64_t t) {
    for (auto s : S) {
      auto v = s + t;
      if (v >= 1 && v <= X && !done[v]) done[v] = 1, --remaining;
    }
    T.push_back(t);
  };
  if (mode == TranslateMode::Greedy) {
    while (remaining > 0) {
      std::int64_t best_t = t_lo, best_g = -1;
      for (auto t = t_lo; t <= t_hi; ++t)
        if (auto g = gain(t); g > best_g) best_g = g, best_t = t;
      take(best_t);
    }
  } else {
    auto rng = make_rng(seed, "random-translates");
    std::uniform_int_distribution<std::int64_t> dist(t_lo, t_hi);
    std::int64_t draws = 0;
    const std::int64_t cap = 1000 * (t_hi - t_lo + 1);
    while (remaining > 0) {
      if (++draws > cap) fail(ErrorCode::SeedExhausted, "random translates did not cover");
      auto t = dist(rng);
      if (gain(t) > 0) take(t);
    }
  }
  std::sort(T.begin(), T.end());
  return T;
}

std::set<Rational> project(const std::set<Point2>& A, const Slope& r) {
  std::set<Rational> out;
  for (const auto& [x, y] : A) out.insert(r ? Rational(x + *r * y) : Rational(y));
  return out;
}

bool phi_t_injective(const std::set<Rational>& P, int n, std::int64_t t) {
  if (P.size() <= 1 || (n == 1 && t != 0)) return true;
  if (t == 0) return false;
  if (t == 1 || t == -1) return false;  // (d, -d, 0, ...) or (d, d, 0, ...) collide once n >= 2
  std::vector<Rational> vals(P.begin(), P.end());
  BigInt L = lcm_of_denominators(vals);
  std::set<BigInt> D;
  for (const auto& a : vals)
    for (const auto& b : vals) D.insert(BigInt((a - b) * L));
  // Is there a nonzero (d_1..d_n) in D^n with sum d_i t^(i-1) = 0? Track carries c with
  // sum_{l<=i} d_l t^(l-1) = c t^i.
  const BigInt tt(static_cast<long>(t));
  std::set<std::pair<BigInt, bool>> states{{BigInt(0), false}};
  for (int i = 1; i <= n; ++i) {
    std::set<std::pair<BigInt, bool>> next;
    for (const auto& [c, nz] : states)
      for (const auto& d : D) {
        BigInt v = d + c;
        bool nz2 = nz || d != 0;
        if (i == n) {
          if (v == 0 && nz2) return false;
          continue;
        }
        if (mpz_divisible_p(v.get_mpz_t(), tt.get_mpz_t()) == 0) continue;
        next.emplace(BigInt(v / tt), nz2);
      }
    states = std::move(next);
  }
  return true;
}

AmplifyResult amplify(const ProjectionSystem& sys, const Rational& eps, const BigInt& M, std::optional<int> forced_n,
                      std::uint64_t materialize_cap) {
  if (sys.B.empty()) fail(ErrorCode::InvalidArgument, "B must be nonempty");
  if (eps <= 0) fail(ErrorCode::InvalidArgument, "eps must be positive");
  if (M <= 0) fail(ErrorCode::InvalidArgument, "M must be positive");
  if (sys.slopes.empty()) fail(ErrorCode::InvalidArgument, "need at least one slope");
  for (std::size_t i = 0; i < sys.slopes.size(); ++i) {
    if (sys.slopes[i] && *sys.slopes[i] == -1) fail(ErrorCode::InvalidArgument, "slope -1 is the distinguished one");
    for (std::size_t j = 0; j < i; ++j)
      if (sys.slopes[i] == sys.slopes[j]) fail(ErrorCode::InvalidArgument, "slopes must be distinct");
  }
  const auto a = BigInt(eps.get_num()), b = BigInt(eps.get_den());
  const unsigned long ua = a.get_ui(), ub = b.get_ui();

  AmplifyResult res;
  auto P = project(sys.B, Rational(-1));
  res.base_distinguished = static_cast<unsigned long>(P.size());
  std::vector<std::set<Rational>> proj;
  BigInt m = 0;
  for (const auto& s : sys.slopes) {
    proj.push_back(project(sys.B, s));
    res.base_slope_sizes.emplace_back(static_cast<unsigned long>(proj.back().size()));
    m = std::max(m, res.base_slope_sizes.back());
  }
  // |P| > m^(1+eps)  <=>  |P|^b > m^(a+b)
  if (!(big_pow(res.base_distinguished, ub) > big_pow(m, ua + ub)))
    fail(ErrorCode::HypothesisFails, "|pi_-1(B)| does not exceed max |pi_j(B)|^(1+eps)");

  // minimal n with |P|^(nb) > M^b m^(n(a+b))
  auto holds = [&](unsigned long n) {
    return big_pow(res.base_distinguished, n * ub) > big_pow(M, ub) * big_pow(m, n * (ua + ub));
  };
  if (forced_n) {
    if (*forced_n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
    res.n = *forced_n;
  } else {
    unsigned long n = 1;
    while (!holds(n)) ++n;
    res.n = static_cast<int>(n);
  }
  const auto n = static_cast<unsigned long>(res.n);

  std::vector<const std::set<Rational>*> all{&P};
  for (const auto& pr : proj) all.push_back(&pr);
  std::int64_t t = 1;
  while (!std::all_of(all.begin(), all.end(), [&](const auto* Pj) { return phi_t_injective(*Pj, res.n, t); })) ++t;
  res.t = t;

  res.distinguished = big_pow(res.base_distinguished, n);
  for (const auto& s : res.base_slope_sizes) res.slope_sizes.push_back(big_pow(s, n));
  BigInt mn = big_pow(m, n);
  res.post_holds = big_pow(res.distinguished, ub) > big_pow(M, ub) * big_pow(mn, ua + ub);

  BigInt total = big_pow(BigInt(static_cast<unsigned long>(sys.B.size())), n);
  if (total <= materialize_cap) {
    std::vector<Point2> base(sys.B.begin(), sys.B.end());
    std::vector<BigInt> powers;
    for (unsigned long i = 1; i <= n; ++i) powers.push_back(big_pow(BigInt(static_cast<long>(t)), i));
    std::set<Point2> out;
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      BigInt X = 0, Y = 0;
      for (unsigned long i = 0; i < n; ++i) {
        X += base[idx[i]].first * powers[i];
        Y += base[idx[i]].second * powers[i];
      }
      out.emplace(X, Y);
      unsigned long i = 0;
      while (i < n && ++idx[i] == base.size()) idx[i++] = 0;
      if (i == n) break;
    }
    // Projection sizes of the listed set, checked against the tensor-power count.
    if (BigInt(static_cast<unsigned long>(project(out, Rational(-1)).size())) != res.distinguished)
      fail(ErrorCode::InvalidCover, "distinguished projection size mismatch");
    for (std::size_t j = 0; j < sys.slopes.size(); ++j)
      if (BigInt(static_cast<unsigned long>(project(out, sys.slopes[j]).size())) != res.slope_sizes[j])
        fail(ErrorCode::InvalidCover, "projection size mismatch");
    res.B_prime = std::move(out);
  }
  return res;
}

BigInt encode_nd_to_1d(const std::vector<std::int64_t>& x, int k, std::int64_t N) {
  if (k < 1 || N < 1) fail(ErrorCode::InvalidArgument, "k and N must be positive");
  const BigInt base = BigInt(10) * k * static_cast<long>(N);
  const std::int64_t limit = 5 * static_cast<std::int64_t>(k) * N;
  BigInt out = 0, pw = base;
  for (auto c : x) {
    if (c >= limit || c <= -limit) fail(ErrorCode::OutOfRange, "coordinate " + std::to_string(c) + " outside (-5kN, 5kN)");
    out += pw * static_cast<long>(c);
    pw *= base;
  }
  return out;
}

std::vector<BigInt> encode_nd_to_1d(const std::vector<std::vector<std::int64_t>>& A, int k, std::int64_t N) {
  std::vector<BigInt> out;
  for (const auto& x : A) out.push_back(encode_nd_to_1d(x, k, N));
  return out;
}

std::int64_t phi_theta(std::uint64_t m, std::int64_t N, const BigInt& x) {
  BigInt r;
  mpz_fdiv_r_2exp(r.get_mpz_t(), x.get_mpz_t(), 64);
  const auto xm = static_cast<std::uint64_t>(mpz_get_ui(r.get_mpz_t()));
  const unsigned __int128 frac = static_cast<unsigned __int128>(m) * xm;
  const auto low = static_cast<std::uint64_t>(frac);  // theta x mod 1, scaled by 2^64
  return static_cast<std::int64_t>((static_cast<unsigned __int128>(low) * static_cast<std::uint64_t>(N)) >> 64);
}

std::int64_t phi_theta(const Rational& theta, std::int64_t N, const BigInt& x) {
  Rational v = theta * x;
  Rational frac = v - Rational(floor_div(v.get_num(), v.get_den()));
  Rational s = frac * N;
  return to_int64(floor_div(s.get_num(), s.get_den()));
}

PhiThetaResult phi_theta_reduce(const PatternFamily& U, const WitnessedCover& cover, std::int64_t N,
                                std::uint64_t seed, bool complete, int max_attempts) {
  if (U.ring().kind != RingContext::Kind::Integers) fail(ErrorCode::InvalidFamily, "needs an integer family");
  for (const auto& u : U.elements())
    if (u[0] <= 0) fail(ErrorCode::InvalidFamily, "family elements must be positive");
  if (!failed_basepoints(cover, U).empty()) fail(ErrorCode::InvalidCover, "input witnesses do not verify");
  if (N < 1 || static_cast<std::int64_t>(cover.witnesses.size()) < N)
    fail(ErrorCode::InvalidArgument, "cover has fewer than N basepoints");
  const std::int64_t uk = to_int64(U.elements().back()[0]);

  std::vector<std::pair<BigInt, BigInt>> pats;  // first N basepoints
  for (const auto& [x, r] : cover.witnesses) {
    if (static_cast<std::int64_t>(pats.size()) == N) break;
    pats.emplace_back(BigInt(x[0].get_num()), BigInt(r[0].get_num()));
  }
  const std::size_t need = static_cast<std::size_t>((N + 2) / 3);
  auto rng = make_rng(seed, "phi-theta");

  PhiThetaResult res;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    std::uint64_t m = rng();
    if (m == 0) continue;
    std::map<std::int64_t, std::size_t> freq;
    for (const auto& [x, r] : pats) ++freq[phi_theta(m, N, x)];
    std::size_t collisions = 0;
    for (const auto& [v, f] : freq) collisions += f * (f - 1) / 2;
    if (collisions > static_cast<std::size_t>(N - 1)) continue;
    std::map<std::int64_t, std::int64_t> images;
    for (const auto& [x, r] : pats) {
      auto s = phi_theta(m, N, r);
      if (s != 0) images.emplace(phi_theta(m, N, x), s);
    }
    if (images.size() < need) continue;

    res.theta = m;
    res.attempts = attempt;
    res.collisions = collisions;
    for (const auto& p : cover.points) res.A2.insert(phi_theta(m, N, BigInt(p[0].get_num())));
    for (auto a : res.A2)
      for (std::int64_t i = 0; i <= uk; ++i)
        for (std::int64_t j = 0; j <= uk; ++j) res.A3.insert(a - i + j * N);
    for (const auto& [x, s] : images) {
      bool inside = true;
      for (const auto& u : U.elements()) inside = inside && res.A3.count(x + s * to_int64(u[0]));
      if (inside) res.images.emplace(x, s);
    }
    if (res.images.size() != images.size()) fail(ErrorCode::InvalidCover, "reduced pattern missing from A3");
    if (complete) {
      std::set<std::int64_t> S;
      for (const auto& [x, s] : res.images) S.insert(x + 1);
      for (auto t : random_translate_cover(S, N)) res.T.push_back(t + 1);
      for (auto a : res.A3)
        for (auto t : res.T) res.A1.insert(a + t);
    }
    return res;
  }
  fail(ErrorCode::SeedExhausted, "no admissible theta in " + std::to_string(max_attempts) + " attempts");
}

}  // namespace patcover
