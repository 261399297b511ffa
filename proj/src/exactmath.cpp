#include "lcmsum/exactmath.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace lcmsum::exactmath {

SieveTables sieve(std::uint64_t limit, std::uint64_t max_limit) {
  if (limit < 2) throw DomainError("sieve: limit must be >= 2");
  if (limit > max_limit) {
    throw ResourceError("sieve: limit " + std::to_string(limit) + " exceeds budget " + std::to_string(max_limit));
  }
  SieveTables t;
  t.limit = limit;
  t.smallest_prime_factor.assign(limit + 1, 0);
  t.mobius.assign(limit + 1, 0);
  t.mobius[1] = 1;
  // linear sieve: every composite is crossed out once, by its smallest prime
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (t.smallest_prime_factor[i] == 0) {
      t.smallest_prime_factor[i] = static_cast<std::uint32_t>(i);
      t.primes.push_back(static_cast<std::uint32_t>(i));
      t.mobius[i] = -1;
    }
    for (const std::uint32_t p : t.primes) {
      const std::uint64_t composite = i * p;
      if (p > t.smallest_prime_factor[i] || composite > limit) break;
      t.smallest_prime_factor[composite] = p;
      t.mobius[composite] = (p == t.smallest_prime_factor[i]) ? 0 : static_cast<std::int8_t>(-t.mobius[i]);
    }
  }
  return t;
}

std::vector<std::pair<std::uint64_t, unsigned>> SieveTables::factorize(std::uint64_t n) const {
  if (n == 0) throw DomainError("factorize: n must be positive");
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  if (n <= limit) {
    while (n > 1) {
      const std::uint64_t p = smallest_prime_factor[n];
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
    return out;
  }
  if (n > limit * limit) throw ResourceError("factorize: n exceeds limit^2");
  for (const std::uint32_t p : primes) {
    if (static_cast<std::uint64_t>(p) * p > n) break;
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

BigInt stirling2(unsigned k, unsigned m) {
  if (m > k) return 0;
  // row-by-row recurrence S(n, j) = j S(n-1, j) + S(n-1, j-1)
  std::vector<BigInt> row(k + 1, 0);
  row[0] = 1;
  for (unsigned n = 1; n <= k; ++n) {
    for (unsigned j = n; j >= 1; --j) row[j] = j * row[j] + row[j - 1];
    row[0] = 0;
  }
  return row[m];
}

unsigned valuation(std::uint64_t n, std::uint64_t p) {
  if (n == 0) throw DomainError("valuation: n must be positive");
  if (p < 2) throw DomainError("valuation: p must be >= 2");
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

namespace {

struct ZetaAttempt {
  Real value;
  Real error;
};

ZetaAttempt zeta_with_terms(unsigned j, std::uint64_t terms, mpfr_prec_t prec) {
  Real sum(prec), term(prec);
  mpfr_set_ui(sum.get(), 0, MPFR_RNDN);
  // sum from the smallest term upward
  for (std::uint64_t n = terms; n >= 1; --n) {
    mpfr_set_ui(term.get(), static_cast<unsigned long>(n), MPFR_RNDN);
    mpfr_pow_si(term.get(), term.get(), -static_cast<long>(j), MPFR_RNDN);
    mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
  }
  // each of 2 * terms roundings is at most 2^-prec relative to a partial sum <= final sum
  Real sum_error(prec);
  mpfr_abs(sum_error.get(), sum.get(), MPFR_RNDU);
  mpfr_mul_ui(sum_error.get(), sum_error.get(), static_cast<unsigned long>(2 * terms + 2), MPFR_RNDU);
  mpfr_mul_2si(sum_error.get(), sum_error.get(), 1 - static_cast<long>(prec), MPFR_RNDU);

  const long exponent = 1 - static_cast<long>(j);
  Real n_real(prec), half_n(prec), lo(prec), hi(prec), t(prec);
  mpfr_set_ui(n_real.get(), static_cast<unsigned long>(terms), MPFR_RNDN);
  // lo = N^(1-j)/(j-1) - N^-j/2
  mpfr_pow_si(lo.get(), n_real.get(), exponent, MPFR_RNDD);
  mpfr_div_ui(lo.get(), lo.get(), j - 1, MPFR_RNDD);
  mpfr_pow_si(t.get(), n_real.get(), -static_cast<long>(j), MPFR_RNDU);
  mpfr_div_2ui(t.get(), t.get(), 1, MPFR_RNDU);
  mpfr_sub(lo.get(), lo.get(), t.get(), MPFR_RNDD);
  // hi = (N+1/2)^(1-j)/(j-1)
  mpfr_set_d(half_n.get(), 0.5, MPFR_RNDN);
  mpfr_add(half_n.get(), half_n.get(), n_real.get(), MPFR_RNDN);  // exact at this precision
  mpfr_pow_si(hi.get(), half_n.get(), exponent, MPFR_RNDU);
  mpfr_div_ui(hi.get(), hi.get(), j - 1, MPFR_RNDU);

  Real value(prec), error(prec);
  mpfr_add(value.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(value.get(), value.get(), 1, MPFR_RNDN);
  // half-width of the bracket, measured from the rounded midpoint
  Real d1(prec), d2(prec);
  mpfr_sub(d1.get(), hi.get(), value.get(), MPFR_RNDU);
  mpfr_sub(d2.get(), value.get(), lo.get(), MPFR_RNDU);
  mpfr_max(error.get(), d1.get(), d2.get(), MPFR_RNDU);
  mpfr_add(value.get(), value.get(), sum.get(), MPFR_RNDN);
  mpfr_add(error.get(), error.get(), sum_error.get(), MPFR_RNDU);
  Real final_rounding = rounding_bound(value);
  mpfr_add(error.get(), error.get(), final_rounding.get(), MPFR_RNDU);
  return {std::move(value), std::move(error)};
}

}  // namespace

BoundedReal zeta_value(unsigned j, double target_error, mpfr_prec_t precision) {
  if (j < 2) throw DomainError("zeta_value: j must be >= 2");
  if (!(target_error > 0)) throw DomainError("zeta_value: target_error must be positive");
  // relative rounding floor of the working precision, with room for the sum
  const double floor = std::ldexp(1.0, 12 - static_cast<int>(precision));
  if (target_error < floor) {
    throw PrecisionError("zeta_value: target below working precision", floor);
  }
  // half-width ~ j N^-(j+1) / 16
  double guess = std::pow(static_cast<double>(j) / (8.0 * target_error), 1.0 / (j + 1));
  std::uint64_t terms = static_cast<std::uint64_t>(guess) + 2;
  constexpr std::uint64_t kMaxTerms = 200'000'000;
  double achieved = std::numeric_limits<double>::infinity();
  while (terms <= kMaxTerms) {
    ZetaAttempt attempt = zeta_with_terms(j, terms, precision);
    achieved = mpfr_get_d(attempt.error.get(), MPFR_RNDU);
    if (achieved <= target_error) return BoundedReal(std::move(attempt.value), std::move(attempt.error));
    terms *= 2;
  }
  throw PrecisionError("zeta_value: target not reached within term budget", achieved);
}

std::vector<BigInt> forward_differences(std::vector<BigInt> values, unsigned order) {
  for (unsigned r = 0; r < order && !values.empty(); ++r) {
    for (std::size_t i = 0; i + 1 < values.size(); ++i) values[i] = values[i + 1] - values[i];
    values.pop_back();
  }
  return values;
}

ExactRational leading_coeff_by_differences(const std::vector<Sample>& samples, unsigned degree) {
  if (samples.size() < degree + 1) {
    throw DomainError("leading_coeff_by_differences: need " + std::to_string(degree + 1) + " samples, got " +
                      std::to_string(samples.size()));
  }
  std::int64_t step = 1;
  if (samples.size() >= 2) {
    step = samples[1].first - samples[0].first;
    if (step == 0) throw DomainError("leading_coeff_by_differences: repeated abscissa");
    for (std::size_t i = 1; i <= degree && i < samples.size(); ++i) {
      if (samples[i].first - samples[i - 1].first != step) {
        throw DomainError("leading_coeff_by_differences: abscissae are not equally spaced");
      }
    }
  }
  std::vector<ExactRational> values;
  values.reserve(degree + 1);
  for (unsigned i = 0; i <= degree; ++i) values.push_back(samples[i].second);
  for (unsigned r = 0; r < degree; ++r) {
    for (std::size_t i = 0; i + 1 < values.size(); ++i) values[i] = values[i + 1] - values[i];
    values.pop_back();
  }
  BigInt scale = factorial(degree) * pow_big(BigInt(step), degree);
  return values.front() / ExactRational(scale);
}

}  // namespace lcmsum::exactmath
