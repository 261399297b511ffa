#include "lcmsum/exactmath.hpp"

#include <doctest.h>

#include <mpfr.h>

using namespace lcmsum;
using namespace lcmsum::exactmath;

namespace {

bool is_prime_naive(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

int mobius_naive(std::uint64_t n) {
  int sign = 1;
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return sign;
}

// S(k, m) = (1/m!) sum_j (-1)^j C(m, j) (m - j)^k
BigInt stirling_explicit(unsigned k, unsigned m) {
  BigInt sum = 0;
  for (unsigned j = 0; j <= m; ++j) {
    const BigInt term = binomial(m, j) * pow_big(BigInt(m - j), k);
    sum += (j % 2 ? -term : term);
  }
  return sum / factorial(m);
}

}  // namespace

TEST_CASE("sieve agrees with trial division") {
  const auto table = sieve(2000);
  std::size_t index = 0;
  for (std::uint64_t n = 0; n <= 2000; ++n) {
    if (is_prime_naive(n)) {
      REQUIRE(index < table.primes.size());
      CHECK(table.primes[index++] == n);
    }
  }
  CHECK(index == table.primes.size());
  for (std::uint64_t n = 1; n <= 2000; ++n) CHECK(table.mobius[n] == mobius_naive(n));
}

TEST_CASE("factorize below and above the sieve limit") {
  const auto table = sieve(100);
  using Factors = std::vector<std::pair<std::uint64_t, unsigned>>;
  CHECK(table.factorize(1).empty());
  CHECK(table.factorize(360) == Factors{{2, 3}, {3, 2}, {5, 1}});
  CHECK(table.factorize(97 * 89) == Factors{{89, 1}, {97, 1}});
  CHECK(table.factorize(2 * 4999) == Factors{{2, 1}, {4999, 1}});
  CHECK_THROWS_AS(table.factorize(100 * 100 + 1), ResourceError);
  CHECK_THROWS_AS(table.factorize(0), DomainError);
}

TEST_CASE("sieve limits") {
  CHECK_THROWS_AS(sieve(1), DomainError);
  CHECK_THROWS_AS(sieve(1000, 100), ResourceError);
}

TEST_CASE("Stirling numbers match the explicit sum") {
  for (unsigned k = 0; k <= 12; ++k) {
    for (unsigned m = 0; m <= k + 1; ++m) CHECK(stirling2(k, m) == stirling_explicit(k, m));
  }
  CHECK(stirling2(4, 2) == 7);
  CHECK(stirling2(3, 5) == 0);
}

TEST_CASE("valuation") {
  CHECK(valuation(1, 2) == 0);
  CHECK(valuation(48, 2) == 4);
  CHECK(valuation(81 * 7, 3) == 4);
  CHECK(valuation(7, 3) == 0);
}

TEST_CASE("zeta values contain the MPFR reference") {
  for (unsigned j : {2u, 3u, 4u, 7u, 12u}) {
    const BoundedReal z = zeta_value(j, 1e-20);
    CHECK(z.error_double() <= 1e-20);
    Real reference(256);
    mpfr_zeta_ui(reference.get(), j, MPFR_RNDN);
    CHECK(z.contains(reference));
  }
}

TEST_CASE("zeta rejects unreachable targets") {
  CHECK_THROWS_AS(zeta_value(2, 1e-60, 64), PrecisionError);
  CHECK_THROWS_AS(zeta_value(1, 1e-5), DomainError);
}

TEST_CASE("leading coefficient from finite differences") {
  // 3n^3 - n + 7 sampled at n = 2, 5, 8, 11
  std::vector<Sample> samples;
  for (std::int64_t n = 2; n <= 11; n += 3) samples.emplace_back(n, ExactRational(3 * n * n * n - n + 7));
  CHECK(leading_coeff_by_differences(samples, 3) == 3);
  CHECK_THROWS_AS(leading_coeff_by_differences(samples, 4), DomainError);
  samples[1].first = 6;
  CHECK_THROWS_AS(leading_coeff_by_differences(samples, 3), DomainError);
}

TEST_CASE("forward differences") {
  std::vector<BigInt> squares;
  for (int n = 0; n < 6; ++n) squares.emplace_back(n * n);
  const auto second = forward_differences(squares, 2);
  CHECK(second.size() == 4);
  for (const auto& d : second) CHECK(d == 2);
}
