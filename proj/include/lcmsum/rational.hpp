#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <map>
#include <string>

namespace lcmsum {

using BigInt = boost::multiprecision::mpz_int;
// Always canonical (lowest terms, positive denominator).
using ExactRational = boost::multiprecision::mpq_rational;

inline BigInt numerator_of(const ExactRational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator_of(const ExactRational& q) { return boost::multiprecision::denominator(q); }

inline ExactRational make_rational(const BigInt& num, const BigInt& den) { return ExactRational(num, den); }

// "num/den", also for integers ("3/1"); the format used in every report.
std::string to_string(const ExactRational& q);
std::string to_string(const BigInt& n);

// Parses "num/den" or a plain integer.
ExactRational parse_rational(const std::string& text);

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);
BigInt pow_big(const BigInt& base, unsigned exponent);

// Exact sum of count / value over a histogram of positive integer values.
// Uses one common denominator (lcm of all keys) so the result does not
// depend on iteration order.
ExactRational sum_reciprocals(const std::map<std::uint64_t, BigInt>& histogram);

}  // namespace lcmsum
