#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace patcover {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p", "-p", "p/q" or a finite decimal such as "0.3". Result is canonical.
Rational parse_rational(std::string_view text);

/// Canonical text: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

bool is_integer(const Rational& q);

/// Converts an integral rational fitting in int64; throws OutOfRange otherwise.
std::int64_t to_int64(const Rational& q);
std::int64_t to_int64(const BigInt& z);

BigInt big_pow(const BigInt& base, unsigned long exp);

BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt ceil_div(const BigInt& a, const BigInt& b);

BigInt lcm_of_denominators(const std::vector<Rational>& xs);

std::int64_t mod_floor(std::int64_t a, std::int64_t m);
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);
bool is_prime(std::int64_t n);

}  // namespace patcover
