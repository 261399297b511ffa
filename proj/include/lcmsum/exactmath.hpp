#pragma once

// Integer/rational utilities shared by every module: sieves, Stirling
// numbers, p-adic valuations, certified zeta values and finite differences.

#include "lcmsum/errors.hpp"
#include "lcmsum/rational.hpp"
#include "lcmsum/real.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace lcmsum::exactmath {

inline constexpr std::uint64_t kDefaultSieveLimit = 10'000'000;
inline constexpr std::uint64_t kMaxSieveLimit = 400'000'000;

// Prime list, Moebius function and smallest prime factor for 0..limit.
// Immutable after construction.
struct SieveTables {
  std::uint64_t limit = 0;
  std::vector<std::uint32_t> primes;
  std::vector<std::int8_t> mobius;                  // mobius[0] unused (0)
  std::vector<std::uint32_t> smallest_prime_factor;  // spf[0] = spf[1] = 0

  // (prime, exponent) pairs in increasing prime order. n <= limit uses the
  // spf table; limit < n <= limit^2 falls back to trial division.
  std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) const;
};

// Throws DomainError for limit < 2 and ResourceError above max_limit.
SieveTables sieve(std::uint64_t limit, std::uint64_t max_limit = kMaxSieveLimit);

// Stirling number of the second kind; 0 outside 0 <= m <= k.
BigInt stirling2(unsigned k, unsigned m);

// Largest e with p^e | n. n >= 1, p >= 2.
unsigned valuation(std::uint64_t n, std::uint64_t p);

// zeta(j) = sum_{n<=N} n^-j + tail, with the tail bracketed by
//   int_N^inf t^-j dt - N^-j / 2  <=  tail  <=  int_{N+1/2}^inf t^-j dt
// (trapezoid / midpoint rules for a convex integrand). N grows until the
// bracket plus summation rounding is below target_error.
BoundedReal zeta_value(unsigned j, double target_error, mpfr_prec_t precision = kDefaultPrecisionBits);

// Sample (abscissa, value) of a polynomial.
using Sample = std::pair<std::int64_t, ExactRational>;

// Leading coefficient of the degree-`degree` polynomial through equally
// spaced samples: Delta^degree / (degree! * step^degree), using the first
// degree + 1 samples.
ExactRational leading_coeff_by_differences(const std::vector<Sample>& samples, unsigned degree);

// n-th forward differences of a sequence (length shrinks by n).
std::vector<BigInt> forward_differences(std::vector<BigInt> values, unsigned order);

}  // namespace lcmsum::exactmath
