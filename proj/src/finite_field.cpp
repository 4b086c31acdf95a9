#include "patcover/finite_field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "patcover/error.hpp"

namespace patcover {

PatternFamily FieldCover::family() const {
  std::vector<Element> es;
  for (auto u : U) es.push_back(scalar(static_cast<long>(u)));
  return PatternFamily(RingContext::finite_field(p, n), std::move(es));
}

bool FieldCover::covers_everything() const {
  double total = std::pow(static_cast<double>(p), n);
  return static_cast<double>(witnesses.size()) == total;
}

bool verify_field_cover(const FieldCover& c) {
  auto F = c.family();
  for (const auto& a : c.A) validate_point(F.ring(), a);
  return failed_basepoints({c.A, c.witnesses}, F).empty();
}

std::vector<Element> field_points(std::int64_t p, int n) {
  return Window{0, p - 1}.enumerate(n);
}

FieldCover ff_min_cover(std::int64_t p, int n, const std::vector<std::int64_t>& U,
                        const std::optional<std::vector<Element>>& demand, const Budget& budget) {
  if (std::pow(static_cast<double>(p), n) > 1e4) fail(ErrorCode::TooLarge, "p^n exceeds 10^4");
  FieldCover out;
  out.p = p;
  out.n = n;
  out.U = U;
  CoverProblem prob{out.family(), {DemandKind::EveryBasepointIn, demand ? *demand : field_points(p, n), 0},
                    ScaleDomain::nonzero(), std::nullopt};
  auto s = solve_min_cover(prob, budget);
  if (!s.certified_optimal) fail(ErrorCode::BudgetExhausted, "field cover search did not finish");
  out.A = s.cover.points;
  out.witnesses = s.cover.witnesses;
  return out;
}

FieldCover product_cover(const FieldCover& c, int n_target) {
  if (c.n != 1) fail(ErrorCode::InvalidArgument, "product cover needs a one-dimensional cover");
  if (n_target < 1) fail(ErrorCode::InvalidArgument, "target dimension must be >= 1");
  if (!verify_field_cover(c) || !c.covers_everything())
    fail(ErrorCode::InvalidCover, "input is not a verified cover of F_p");
  FieldCover out;
  out.p = c.p;
  out.n = n_target;
  out.U = c.U;
  std::vector<Element> A1(c.A.begin(), c.A.end());
  for (const auto& idx : Window{0, static_cast<std::int64_t>(A1.size()) - 1}.enumerate(n_target)) {
    Element e;
    for (const auto& i : idx) e.push_back(A1[to_int64(i)][0]);
    out.A.insert(e);
  }
  for (const auto& x : field_points(c.p, n_target)) {
    Element r;
    for (const auto& xi : x) r.push_back(c.witnesses.at(scalar(xi))[0]);
    out.witnesses.emplace(x, r);
  }
  if (!verify_field_cover(out)) fail(ErrorCode::InvalidCover, "product cover failed verification");
  return out;
}

LiftResult lift_cover(const FieldCover& c, const Rational& eps) {
  if (eps <= 0) fail(ErrorCode::InvalidArgument, "eps must be positive");
  if (!verify_field_cover(c)) fail(ErrorCode::InvalidCover, "field cover does not verify");
  std::int64_t umax = 0;
  for (auto u : c.U) umax = std::max<std::int64_t>(umax, u < 0 ? -u : u);
  const auto num = BigInt(eps.get_num()).get_ui(), den = BigInt(eps.get_den()).get_ui();
  // max |u| < p^eps  <=>  max|u|^den < p^num
  if (!(big_pow(umax, den) < big_pow(c.p, num)))
    fail(ErrorCode::EpsilonViolated, "max |u| = " + std::to_string(umax) + " is not below p^" + to_string(eps));

  LiftResult res;
  std::set<std::vector<std::int64_t>> A2;
  for (const auto& [x, r] : c.witnesses) {
    std::vector<std::int64_t> xs, rs;
    for (const auto& v : x) xs.push_back(to_int64(v));
    for (const auto& v : r) rs.push_back(to_int64(v));
    for (auto u : c.U) {
      std::vector<std::int64_t> pt(xs.size());
      for (std::size_t i = 0; i < xs.size(); ++i) pt[i] = xs[i] + rs[i] * u;
      A2.insert(pt);
    }
    res.witnesses.emplace(xs, rs);
  }
  res.A2.assign(A2.begin(), A2.end());
  res.basepoints = c.witnesses.size();
  // |A2|^den <= 2^(n den) p^(n num) |A1|^den
  res.size_bound_holds = big_pow(static_cast<unsigned long>(res.A2.size()), den) <=
                         big_pow(2, c.n * den) * big_pow(c.p, c.n * num) *
                             big_pow(static_cast<unsigned long>(c.A.size()), den);

  auto encode = [&](const std::vector<std::int64_t>& v, const BigInt& b) {
    BigInt out = 0, pw = 1;
    for (auto x : v) {
      out += pw * static_cast<long>(x);
      pw *= b;
    }
    return out;
  };
  res.b = BigInt(10) * static_cast<long>(c.U.size()) * static_cast<long>(c.p);
  while (true) {
    std::set<BigInt> img, bases;
    for (const auto& v : res.A2) img.insert(encode(v, res.b));
    for (const auto& [x, r] : res.witnesses) bases.insert(encode(x, res.b));
    if (img.size() == res.A2.size() && bases.size() == res.witnesses.size()) {
      res.encoded.assign(img.begin(), img.end());
      break;
    }
    res.b *= 2;
  }
  for (const auto& [x, r] : res.witnesses) res.encoded_witnesses.emplace(encode(x, res.b), encode(r, res.b));
  // The encoded set carries a U-pattern at each encoded basepoint.
  std::set<BigInt> enc(res.encoded.begin(), res.encoded.end());
  for (const auto& [x, r] : res.encoded_witnesses)
    for (auto u : c.U)
      if (!enc.count(BigInt(x + r * static_cast<long>(u)))) fail(ErrorCode::InvalidCover, "encoded pattern missing");
  return res;
}

PrimeChoice step3_prime_choice(const std::vector<std::int64_t>& scales) {
  const auto N = static_cast<std::int64_t>(scales.size());
  if (N < 2) fail(ErrorCode::InvalidArgument, "need N >= 2 scales");
  for (auto r : scales)
    if (r == 0) fail(ErrorCode::InvalidArgument, "scales must be nonzero");
  PrimeChoice out;
  for (std::int64_t q = N + 1; q <= 2 * N; ++q) {
    if (!is_prime(q)) continue;
    auto& hits = out.divides[q];
    for (std::size_t i = 0; i < scales.size(); ++i)
      if (scales[i] % q == 0) hits.push_back(i + 1);
    if (hits.empty() && out.p == 0) out.p = q;
  }
  if (out.p == 0) {
    std::ostringstream msg;
    msg << "every prime in (" << N << ", " << 2 * N << "] divides some scale:";
    for (const auto& [q, xs] : out.divides) {
      msg << " " << q << "|r(";
      for (std::size_t i = 0; i < xs.size(); ++i) msg << (i ? "," : "") << xs[i];
      msg << ")";
    }
    fail(ErrorCode::NoPrimeFound, msg.str());
  }
  return out;
}

double field_translate_bound(std::int64_t p, int n, std::size_t s_size) {
  double total = std::pow(static_cast<double>(p), n);
  return 4.0 * (total / static_cast<double>(s_size)) * std::max(1.0, n * std::log(static_cast<double>(p)));
}

TranslatedFieldCover ff_translate_cover(const FieldCover& c) {
  if (c.witnesses.empty()) fail(ErrorCode::InvalidArgument, "cover has no basepoints");
  if (!verify_field_cover(c)) fail(ErrorCode::InvalidCover, "field cover does not verify");
  const auto ring = RingContext::finite_field(c.p, c.n);
  auto all = field_points(c.p, c.n);
  std::map<Element, std::size_t> index;
  for (std::size_t i = 0; i < all.size(); ++i) index.emplace(all[i], i);
  std::vector<Element> S;
  for (const auto& kv : c.witnesses) S.push_back(kv.first);

  std::vector<char> done(all.size(), 0);
  std::size_t remaining = all.size();
  TranslatedFieldCover out;
  out.cover.p = c.p;
  out.cover.n = c.n;
  out.cover.U = c.U;
  while (remaining > 0) {
    std::size_t best = 0, best_gain = 0;
    for (std::size_t t = 0; t < all.size(); ++t) {
      std::size_t g = 0;
      for (const auto& s : S) g += !done[index.at(add(ring, s, all[t]))];
      if (g > best_gain) best_gain = g, best = t;
    }
    const auto& t = all[best];
    out.T.push_back(t);
    for (const auto& s : S) {
      auto x = add(ring, s, t);
      auto i = index.at(x);
      if (!done[i]) {
        done[i] = 1;
        --remaining;
        out.cover.witnesses.emplace(x, c.witnesses.at(s));
      }
    }
  }
  std::sort(out.T.begin(), out.T.end());
  for (const auto& a : c.A)
    for (const auto& t : out.T) out.cover.A.insert(add(ring, a, t));
  if (!verify_field_cover(out.cover)) fail(ErrorCode::InvalidCover, "translated cover failed verification");
  return out;
}

}  // namespace patcover
