#include "patcover/cyclotomic.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

namespace patcover {

namespace {

std::int64_t checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) fail(ErrorCode::OutOfRange, "cyclotomic coefficient overflow");
  return static_cast<std::int64_t>(v);
}

void check_arity(const CyclotomicRing& ring, const CyclotomicElement& x) {
  if (static_cast<int>(x.coeffs.size()) != ring.d)
    fail(ErrorCode::RingMismatch, "element of length " + std::to_string(x.coeffs.size()) +
                                      " in ring of degree " + std::to_string(ring.d));
}

std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t m) {
  __int128 r = 1, x = mod_floor(b, m);
  while (e > 0) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::int64_t>(r);
}

bool generates_units(int n, int a) {
  if (std::gcd(n, a) != 1) return false;
  int phi = n == 2 ? 1 : 2;
  int order = 1;
  for (int x = a % n; x != 1 % n; x = x * a % n) ++order;
  return order == phi;
}

}  // namespace

CyclotomicRing::CyclotomicRing(int order) : n(order), d(order == 4 ? 2 : 1) {
  if (order != 2 && order != 4)
    fail(ErrorCode::InvalidArgument, "cyclotomic order must be 2 or 4, got " + std::to_string(order));
}

bool CyclotomicElement::is_zero() const {
  for (auto c : coeffs)
    if (c != 0) return false;
  return true;
}

std::int64_t CyclotomicElement::sup_norm() const {
  std::int64_t m = 0;
  for (auto c : coeffs) m = std::max<std::int64_t>(m, c < 0 ? -c : c);
  return m;
}

CyclotomicElement otimes(const CyclotomicRing& ring, const CyclotomicElement& r, const CyclotomicElement& u) {
  check_arity(ring, r);
  check_arity(ring, u);
  std::vector<__int128> rr(r.coeffs.begin(), r.coeffs.end());
  std::vector<__int128> uu(u.coeffs.begin(), u.coeffs.end());
  CyclotomicElement out;
  for (auto v : otimes_coeffs(ring.n, rr, uu)) out.coeffs.push_back(checked(v));
  return out;
}

CyclotomicElement add(const CyclotomicRing& ring, const CyclotomicElement& a, const CyclotomicElement& b) {
  check_arity(ring, a);
  check_arity(ring, b);
  CyclotomicElement out;
  for (int i = 0; i < ring.d; ++i) out.coeffs.push_back(checked(__int128(a.coeffs[i]) + b.coeffs[i]));
  return out;
}

NormBoundReport norm_bound_check(const CyclotomicRing& ring, const CyclotomicElement& r, const CyclotomicElement& u) {
  NormBoundReport rep;
  rep.lhs = otimes(ring, r, u).sup_norm();
  rep.rhs = checked(__int128(2 * ring.d) * r.sup_norm() * u.sup_norm());
  rep.holds = rep.lhs <= rep.rhs;
  return rep;
}

bool is_inert(std::int64_t q, int n) {
  if (!is_prime(q) || q == 2) return false;
  if (n == 2) return true;
  // -1 is a square mod q iff (-1)^((q-1)/2) = 1.
  return pow_mod(q - 1, (q - 1) / 2, q) != 1;
}

PrimeSystem find_prime_system(int n, int a, int i_lo, int i_hi) {
  CyclotomicRing ring(n);
  if (!generates_units(n, a))
    fail(ErrorCode::InvalidResidue, std::to_string(a) + " does not generate the units mod " + std::to_string(n));
  if (i_lo < 1 || i_hi < i_lo) fail(ErrorCode::InvalidArgument, "prime index range must satisfy 1 <= lo <= hi");
  PrimeSystem ps;
  ps.n = ring.n;
  ps.a = a;
  ps.i_lo = i_lo;
  ps.i_hi = i_hi;
  int index = 0;
  for (std::int64_t q = 3; index < i_hi; q += 2) {
    if (q % n != a % n || !is_prime(q)) continue;
    ++index;
    if (index >= i_lo) {
      ps.primes.push_back(q);
      ps.Q *= q;
    }
  }
  return ps;
}

PrimeSystem prime_system_from(int n, std::vector<std::int64_t> primes) {
  CyclotomicRing ring(n);
  if (primes.empty()) fail(ErrorCode::InvalidArgument, "empty prime list");
  PrimeSystem ps;
  ps.n = ring.n;
  ps.a = n == 4 ? 3 : 1;
  ps.i_lo = 0;
  ps.i_hi = 0;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    auto q = primes[i];
    if (!is_inert(q, n)) fail(ErrorCode::InvalidResidue, std::to_string(q) + " is not an admissible prime");
    if (i > 0 && q <= primes[i - 1]) fail(ErrorCode::InvalidArgument, "primes must be strictly ascending");
    ps.Q *= q;
  }
  ps.primes = std::move(primes);
  return ps;
}

std::vector<Residue> crt_split(const std::vector<BigInt>& x, const PrimeSystem& ps) {
  if (static_cast<int>(x.size()) != ps.d())
    fail(ErrorCode::ArityMismatch, "element has " + std::to_string(x.size()) + " coefficients, expected " +
                                       std::to_string(ps.d()));
  std::vector<Residue> out;
  for (auto q : ps.primes) {
    Residue r;
    for (const auto& c : x) {
      BigInt m;
      mpz_fdiv_r_ui(m.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(q));
      r.push_back(m.get_si());
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Residue> crt_split(const CyclotomicElement& x, const PrimeSystem& ps) {
  std::vector<BigInt> big;
  for (auto c : x.coeffs) big.emplace_back(static_cast<long>(c));
  return crt_split(big, ps);
}

std::vector<BigInt> crt_lift(const std::vector<Residue>& residues, const PrimeSystem& ps) {
  if (residues.size() != ps.primes.size())
    fail(ErrorCode::ArityMismatch, std::to_string(residues.size()) + " residues for " +
                                       std::to_string(ps.primes.size()) + " primes");
  const int d = ps.d();
  std::vector<BigInt> out(d, 0);
  for (std::size_t i = 0; i < residues.size(); ++i) {
    if (static_cast<int>(residues[i].size()) != d)
      fail(ErrorCode::ArityMismatch, "residue " + std::to_string(i) + " has wrong length");
    const auto q = ps.primes[i];
    BigInt cofactor = ps.Q / q;
    BigInt cof_mod;
    mpz_fdiv_r_ui(cof_mod.get_mpz_t(), cofactor.get_mpz_t(), static_cast<unsigned long>(q));
    BigInt basis = cofactor * mod_inverse(cof_mod.get_si(), q);
    for (int c = 0; c < d; ++c) out[c] += basis * mod_floor(residues[i][c], q);
  }
  for (auto& c : out) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), ps.Q.get_mpz_t());
  return out;
}

PrimorialRatio primorial_ratio(const PrimeSystem& ps) {
  const int m = ps.i_hi > 0 ? ps.i_hi : static_cast<int>(ps.primes.size());
  if (m < 2) fail(ErrorCode::InvalidArgument, "primorial ratio needs m >= 2");
  PrimorialRatio r;
  for (auto q : ps.primes) r.log_product += std::log(static_cast<double>(q));
  r.m_log_m = m * std::log(static_cast<double>(m));
  r.ratio = r.log_product / r.m_log_m;
  return r;
}

}  // namespace patcover
