#include "patcover/rational.hpp"

#include <limits>

#include "patcover/error.hpp"

namespace patcover {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

BigInt parse_int(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) fail(ErrorCode::InvalidArgument, "not an integer: '" + std::string(s) + "'");
  BigInt z(std::string(s), 10);
  return neg ? BigInt(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) fail(ErrorCode::InvalidArgument, "empty rational");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_int(trim(s.substr(0, slash)));
    BigInt den = parse_int(trim(s.substr(slash + 1)));
    if (den == 0) fail(ErrorCode::InvalidArgument, "zero denominator in '" + std::string(s) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip.front() == '-';
    if (!ip.empty() && (ip.front() == '-' || ip.front() == '+')) ip.remove_prefix(1);
    if (ip.empty()) ip = "0";
    if (!all_digits(ip) || (!fp.empty() && !all_digits(fp)))
      fail(ErrorCode::InvalidArgument, "bad decimal '" + std::string(s) + "'");
    BigInt den = big_pow(10, fp.size());
    BigInt num = BigInt(std::string(ip), 10) * den;
    if (!fp.empty()) num += BigInt(std::string(fp), 10);
    Rational q(neg ? BigInt(-num) : num, den);
    q.canonicalize();
    return q;
  }
  return Rational(parse_int(s));
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

std::int64_t to_int64(const BigInt& z) {
  if (!mpz_fits_slong_p(z.get_mpz_t()) || sizeof(long) < 8)
    fail(ErrorCode::OutOfRange, "integer " + z.get_str() + " exceeds 64 bits");
  return static_cast<std::int64_t>(z.get_si());
}

std::int64_t to_int64(const Rational& q) {
  if (!is_integer(q)) fail(ErrorCode::OutOfRange, "expected an integer, got " + to_string(q));
  return to_int64(BigInt(q.get_num()));
}

BigInt big_pow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

BigInt lcm_of_denominators(const std::vector<Rational>& xs) {
  BigInt c = 1;
  for (const auto& x : xs) mpz_lcm(c.get_mpz_t(), c.get_mpz_t(), x.get_den_mpz_t());
  return c;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, b = mod_floor(a, m);
  while (b != 0) {
    std::int64_t q = g / b;
    std::int64_t t = g - q * b;
    g = b;
    b = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  if (g != 1) fail(ErrorCode::InvalidArgument, "no inverse of " + std::to_string(a) + " mod " + std::to_string(m));
  return mod_floor(x, m);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::int64_t f = 5; f <= n / f; f += 6)
    if (n % f == 0 || n % (f + 2) == 0) return false;
  return true;
}

}  // namespace patcover
