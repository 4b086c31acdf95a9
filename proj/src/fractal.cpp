#include "patcover/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "patcover/error.hpp"

namespace patcover {

bool DigitSystem::osc_certified() const {
  std::set<IntVec> seen;
  for (const auto& d : digits) {
    for (auto c : d)
      if (c < 0 || c >= base) return false;
    if (!seen.insert(d).second) return false;
  }
  return true;
}

DigitSystem make_digit_system(std::int64_t base, std::vector<IntVec> digits, int depth) {
  if (base < 2) fail(ErrorCode::InvalidArgument, "base must be >= 2");
  if (digits.empty()) fail(ErrorCode::InvalidArgument, "digit set is empty");
  if (depth < 1) fail(ErrorCode::InvalidArgument, "depth must be >= 1");
  const auto dim = digits.front().size();
  if (dim == 0) fail(ErrorCode::InvalidArgument, "digits need at least one coordinate");
  for (const auto& d : digits)
    if (d.size() != dim) fail(ErrorCode::InvalidArgument, "digits have mixed dimensions");
  std::sort(digits.begin(), digits.end());
  if (std::adjacent_find(digits.begin(), digits.end()) != digits.end())
    fail(ErrorCode::DuplicateElements, "repeated digit");
  return {base, std::move(digits), static_cast<int>(dim), depth};
}

double moran_dimension(const std::vector<Rational>& ratios) {
  if (ratios.empty()) fail(ErrorCode::InvalidArgument, "no ratios");
  for (const auto& c : ratios)
    if (c <= 0 || c >= 1) fail(ErrorCode::InvalidArgument, "ratios must lie in (0,1)");
  if (ratios.size() == 1) return 0.0;
  if (std::all_of(ratios.begin(), ratios.end(), [&](const Rational& c) { return c == ratios.front(); }))
    return std::log(static_cast<double>(ratios.size())) / std::log(1.0 / ratios.front().get_d());

  auto f = [&](double s) {
    double sum = 0;
    for (const auto& c : ratios) sum += std::pow(c.get_d(), s);
    return sum - 1.0;
  };
  double lo = 0, hi = 1;
  while (f(hi) > 0) hi *= 2;
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Rational AttractorTruncation::denominator() const {
  return Rational(big_pow(system.base, static_cast<unsigned long>(system.depth - 1)));
}

std::vector<std::vector<Rational>> AttractorTruncation::points() const {
  const Rational den = denominator();
  std::vector<std::vector<Rational>> out;
  for (const auto& row : numerators) {
    std::vector<Rational> p;
    for (auto v : row) p.push_back(Rational(static_cast<long>(v)) / den);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::vector<Rational>> AttractorTruncation::normalized_points() const {
  const Rational den = denominator() * system.base;
  std::vector<std::vector<Rational>> out;
  for (const auto& row : numerators) {
    std::vector<Rational> p;
    for (auto v : row) p.push_back(Rational(static_cast<long>(v)) / den);
    out.push_back(std::move(p));
  }
  return out;
}

AttractorTruncation build_truncation(const DigitSystem& sys) {
  const double count = std::pow(static_cast<double>(sys.digits.size()), sys.depth);
  if (count > 1e7) fail(ErrorCode::TooLarge, "|A|^depth exceeds 10^7");
  std::int64_t amax = 1;
  for (const auto& d : sys.digits)
    for (auto c : d) amax = std::max<std::int64_t>(amax, c < 0 ? -c : c);
  if (std::pow(static_cast<double>(sys.base), sys.depth) * static_cast<double>(amax) > 9e18)
    fail(ErrorCode::TooLarge, "numerators exceed 64 bits");

  // numerator of sum_{j<depth} a_j N^{-j} over N^(depth-1) is sum_j a_j N^(depth-1-j): Horner.
  std::vector<IntVec> cur{IntVec(sys.dim, 0)};
  for (int level = 0; level < sys.depth; ++level) {
    std::vector<IntVec> next;
    next.reserve(cur.size() * sys.digits.size());
    for (const auto& v : cur)
      for (const auto& d : sys.digits) {
        IntVec w(sys.dim);
        for (int i = 0; i < sys.dim; ++i) w[i] = v[i] * sys.base + d[i];
        next.push_back(std::move(w));
      }
    cur = std::move(next);
  }
  std::sort(cur.begin(), cur.end());
  cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
  return {sys, std::move(cur)};
}

namespace {

std::int64_t floor_div64(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

}  // namespace

BoxCountEstimate box_count_estimate(const AttractorTruncation& t, const std::vector<int>& scales) {
  const auto& sys = t.system;
  if (scales.empty()) fail(ErrorCode::InvalidArgument, "no scales");
  BoxCountEstimate est;
  for (int j : scales) {
    if (j < 1 || j > sys.depth)
      fail(ErrorCode::ResolutionExceeded, "scale N^-" + std::to_string(j) + " beyond truncation depth " +
                                              std::to_string(sys.depth));
    // normalized point = num / N^depth; box index floor(num / N^(depth-j))
    std::int64_t width = 1;
    for (int i = 0; i < sys.depth - j; ++i) width *= sys.base;
    std::vector<IntVec> boxes;
    boxes.reserve(t.numerators.size());
    for (const auto& row : t.numerators) {
      IntVec b(row.size());
      for (std::size_t i = 0; i < row.size(); ++i) b[i] = floor_div64(row[i], width);
      boxes.push_back(std::move(b));
    }
    std::sort(boxes.begin(), boxes.end());
    auto count = static_cast<std::size_t>(std::unique(boxes.begin(), boxes.end()) - boxes.begin());
    est.rows.push_back({j, count});
  }
  const double logN = std::log(static_cast<double>(sys.base));
  if (est.rows.size() == 1) {
    est.slope = std::log(static_cast<double>(est.rows[0].count)) / (est.rows[0].j * logN);
    return est;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(est.rows.size());
  for (const auto& r : est.rows) {
    double x = r.j * logN, y = std::log(static_cast<double>(r.count));
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  double den = n * sxx - sx * sx;
  if (den == 0) fail(ErrorCode::InvalidArgument, "scales must not all coincide");
  est.slope = (n * sxy - sx * sy) / den;
  return est;
}

ApCheck ap_in_attractor_check(const DigitSystem& sys, const std::map<IntVec, IntVec>& witness,
                              const std::vector<IntVec>& r_digits, int k) {
  if (static_cast<int>(r_digits.size()) > sys.depth)
    fail(ErrorCode::ResolutionExceeded, "difference has more digits than the truncation depth");
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be >= 1");
  std::set<IntVec> A(sys.digits.begin(), sys.digits.end());
  ApCheck out;
  out.holds = true;
  for (int i = 1; i <= k; ++i) {
    std::vector<IntVec> s;
    for (const auto& rm : r_digits) {
      if (static_cast<int>(rm.size()) != sys.dim) fail(ErrorCode::InvalidArgument, "digit has wrong dimension");
      for (auto c : rm)
        if (c < 0 || c >= sys.base) fail(ErrorCode::InvalidArgument, "difference digit outside [0, N)");
      auto it = witness.find(rm);
      if (it == witness.end()) fail(ErrorCode::MissingWitness, "no progression for a difference digit");
      IntVec digit(sys.dim);
      for (int c = 0; c < sys.dim; ++c) {
        digit[c] = it->second[c] + i * rm[c];
        if (digit[c] < 0 || digit[c] >= sys.base) out.carries = true;
      }
      if (!A.count(digit)) out.holds = false;
      s.push_back(std::move(digit));
    }
    out.digit_strings.push_back(std::move(s));
  }
  return out;
}

namespace {

std::int64_t ceil_scaled(const Rational& x, std::int64_t q) {
  Rational v = x * q;
  return to_int64(ceil_div(v.get_num(), v.get_den()));
}

}  // namespace

Discretized discretize_cover(const std::vector<std::vector<Rational>>& P, std::int64_t q) {
  if (q < 1) fail(ErrorCode::InvalidArgument, "q must be >= 1");
  std::set<IntVec> S;
  for (const auto& p : P) {
    IntVec v;
    for (const auto& c : p) v.push_back(ceil_scaled(c, q));
    S.insert(std::move(v));
  }
  return {std::vector<IntVec>(S.begin(), S.end())};
}

DiscretizedProgressions discretize_progressions(const std::map<std::vector<Rational>, std::vector<Rational>>& a_of_r,
                                                int k, std::int64_t q) {
  if (q < 1 || k < 1) fail(ErrorCode::InvalidArgument, "q and k must be >= 1");
  DiscretizedProgressions out;
  std::set<IntVec> S;
  for (const auto& [r, a] : a_of_r) {
    IntVec rq, aq;
    for (const auto& c : r) rq.push_back(ceil_scaled(c, q));
    for (const auto& c : a) aq.push_back(ceil_scaled(c, q));
    for (int i = 0; i < k; ++i) {
      IntVec p(rq.size());
      for (std::size_t c = 0; c < rq.size(); ++c) p[c] = aq[c] + i * rq[c];
      S.insert(std::move(p));
    }
    out.witnesses.emplace(rq, aq);
  }
  out.S.assign(S.begin(), S.end());
  return out;
}

}  // namespace patcover
