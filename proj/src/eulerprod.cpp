#include "lcmsum/eulerprod.hpp"

#include "lcmsum/exactmath.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lcmsum::eulerprod {

namespace {

BigInt coefficient_or_zero(const std::vector<BigInt>& c, std::size_t i) { return i < c.size() ? c[i] : BigInt(0); }

int degree_of(const std::vector<BigInt>& c) {
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    if (c[static_cast<std::size_t>(i)] != 0) return i;
  }
  return -1;
}

// Truncated product of two series through degree `max_degree`.
std::vector<BigInt> multiply_truncated(const std::vector<BigInt>& a, const std::vector<BigInt>& b, std::size_t max_degree) {
  std::vector<BigInt> out(max_degree + 1, 0);
  for (std::size_t i = 0; i < a.size() && i <= max_degree; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= max_degree; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// (1 - x^step)^(-b) = sum_m [b (b+1) ... (b+m-1) / m!] x^(step m), for any integer b.
std::vector<BigInt> inverse_power_series(int step, const BigInt& b, std::size_t max_degree) {
  std::vector<BigInt> out(max_degree + 1, 0);
  BigInt coef = 1;
  for (std::size_t m = 0; m * static_cast<std::size_t>(step) <= max_degree; ++m) {
    if (m > 0) coef = coef * (b + static_cast<long>(m) - 1) / static_cast<long>(m);
    out[m * static_cast<std::size_t>(step)] = coef;
    if (coef == 0) break;
  }
  return out;
}

std::vector<BigInt> to_big(const coprimality::QPolynomial& q) {
  std::vector<BigInt> out;
  for (const auto c : q.coefficients) out.emplace_back(c);
  return out;
}

Real unit_roundoff(mpfr_prec_t precision) {
  Real u(precision);
  mpfr_set_ui(u.get(), 1, MPFR_RNDN);
  mpfr_mul_2si(u.get(), u.get(), -static_cast<long>(precision), MPFR_RNDU);
  return u;
}

}  // namespace

ZetaFactorization zeta_factorization(const std::vector<BigInt>& coefficients, int acceleration_order) {
  if (acceleration_order < 1) throw DomainError("zeta_factorization: acceleration order must be >= 1");
  if (coefficient_or_zero(coefficients, 0) != 1) throw ComputationError("zeta_factorization: constant term must be 1");
  if (coefficient_or_zero(coefficients, 1) != 0) {
    throw ComputationError("zeta_factorization: non-zero linear term, the Euler product diverges");
  }
  const int J = acceleration_order;
  const auto uJ = static_cast<std::size_t>(J);
  // power sums of reciprocal roots: s_n = -n c_n - sum_{i=1}^{n-1} c_i s_{n-i}
  std::vector<BigInt> s(uJ + 1, 0);
  for (std::size_t n = 1; n <= uJ; ++n) {
    BigInt value = -BigInt(static_cast<long>(n)) * coefficient_or_zero(coefficients, n);
    for (std::size_t i = 1; i < n; ++i) value -= coefficient_or_zero(coefficients, i) * s[n - i];
    s[n] = value;
  }
  const auto table = exactmath::sieve(std::max(J, 2));
  ZetaFactorization out;
  out.acceleration_order = J;
  out.exponents.assign(uJ + 1, 0);
  for (std::size_t j = 1; j <= uJ; ++j) {
    BigInt weighted = 0;  // j b_j = sum_{d | j} mu(j/d) s_d
    for (std::size_t d = 1; d <= j; ++d) {
      if (j % d == 0) weighted += static_cast<int>(table.mobius[j / d]) * s[d];
    }
    if (weighted % static_cast<long>(j) != 0) {
      throw ComputationError("zeta_factorization: exponent b_" + std::to_string(j) + " is not an integer");
    }
    out.exponents[j] = weighted / static_cast<long>(j);
  }
  if (out.exponents[1] != 0) throw ComputationError("zeta_factorization: b_1 must vanish");

  const std::size_t max_degree = 2 * uJ;
  std::vector<BigInt> residual(max_degree + 1, 0);
  for (std::size_t i = 0; i <= max_degree; ++i) residual[i] = coefficient_or_zero(coefficients, i);
  for (int j = 2; j <= J; ++j) {
    const BigInt& b = out.exponents[static_cast<std::size_t>(j)];
    if (b == 0) continue;
    residual = multiply_truncated(residual, inverse_power_series(j, b, max_degree), max_degree);
  }
  if (residual[0] != 1) throw ComputationError("zeta_factorization: residual constant term is not 1");
  for (std::size_t n = 1; n <= uJ; ++n) {
    if (residual[n] != 0) {
      throw ComputationError("zeta_factorization: residual coefficient " + std::to_string(n) + " does not vanish");
    }
  }
  out.residual_series = std::move(residual);
  return out;
}

BigInt tail_constant(const std::vector<BigInt>& coefficients, const ZetaFactorization& factorization,
                     BigInt* root_bound) {
  const int d = degree_of(coefficients);
  // smallest B with B^i >= |c_i| for every i; Fujiwara then gives |beta| <= 2B
  BigInt b = 1;
  for (int i = 1; i <= d; ++i) {
    const BigInt magnitude = abs(coefficients[static_cast<std::size_t>(i)]);
    while (pow_big(b, static_cast<unsigned>(i)) < magnitude) b += 1;
  }
  const BigInt roots = 2 * b;
  if (root_bound) *root_bound = roots;
  BigInt weighted = 0;  // sum_j j |b_j|
  for (std::size_t j = 2; j < factorization.exponents.size(); ++j) {
    weighted += static_cast<long>(j) * abs(factorization.exponents[j]);
  }
  const auto J = static_cast<unsigned>(factorization.acceleration_order);
  return 2 * (BigInt(std::max(d, 0)) * pow_big(roots, J + 1) + weighted);
}

EulerProductResult euler_product(const std::vector<BigInt>& coefficients,
                                 const std::function<ExactRational(std::uint64_t)>& local_factor,
                                 double target_error, const EulerOptions& options) {
  if (!(target_error > 0)) throw DomainError("euler_product: target error must be positive");
  const mpfr_prec_t prec = options.precision;
  const int J = options.acceleration_order;
  const std::uint64_t limit = options.prime_limit;
  const ZetaFactorization factorization = zeta_factorization(coefficients, J);

  BigInt roots;
  const BigInt k_const = tail_constant(coefficients, factorization, &roots);
  if (BigInt(limit) + 1 < 2 * roots) {
    throw PrecisionError("euler_product: prime limit must be at least twice the root bound " + roots.str(),
                         std::numeric_limits<double>::infinity());
  }
  // sum_{p > P} K p^-(J+1) <= K P^-J / J
  Real tail(prec);
  mpfr_set_ui(tail.get(), static_cast<unsigned long>(limit), MPFR_RNDD);
  mpfr_pow_si(tail.get(), tail.get(), -J, MPFR_RNDU);
  Real k_real = Real::from_int(k_const, prec, MPFR_RNDU);
  mpfr_mul(tail.get(), tail.get(), k_real.get(), MPFR_RNDU);
  mpfr_div_ui(tail.get(), tail.get(), static_cast<unsigned long>(J), MPFR_RNDU);
  const double tail_bound = mpfr_get_d(tail.get(), MPFR_RNDU);
  if (tail_bound > target_error / 4) {
    throw PrecisionError("euler_product: tail bound exceeds target; raise the prime limit or acceleration order",
                         tail_bound);
  }

  // finite product of R(1/p) = F(1/p) / prod_j (1 - p^-j)^{b_j}
  const auto table = exactmath::sieve(std::max<std::uint64_t>(limit, 2), std::max<std::uint64_t>(limit, 2));
  Real product(prec), factor(prec), t(prec), power(prec);
  mpfr_set_ui(product.get(), 1, MPFR_RNDN);
  std::vector<std::pair<long, mpz_srcptr>> active;
  for (int j = 2; j <= J; ++j) {
    const BigInt& b = factorization.exponents[static_cast<std::size_t>(j)];
    if (b != 0) active.emplace_back(j, b.backend().data());
  }
  std::uint64_t primes_used = 0;
  for (const std::uint32_t p : table.primes) {
    if (p > limit) break;
    const ExactRational value = local_factor(p);
    if (value <= 0) {
      throw ComputationError("euler_product: local factor at p=" + std::to_string(p) + " is not positive");
    }
    mpfr_set_q(factor.get(), value.backend().data(), MPFR_RNDN);
    for (const auto& [j, b] : active) {
      mpfr_set_ui(t.get(), p, MPFR_RNDN);
      mpfr_pow_si(t.get(), t.get(), -j, MPFR_RNDN);
      mpfr_ui_sub(t.get(), 1, t.get(), MPFR_RNDN);
      mpfr_pow_z(power.get(), t.get(), b, MPFR_RNDN);
      mpfr_div(factor.get(), factor.get(), power.get(), MPFR_RNDN);
    }
    mpfr_mul(product.get(), product.get(), factor.get(), MPFR_RNDN);
    ++primes_used;
  }
  // Per prime: t carries <= 3u relative error, so t^b carries
  // <= exp(3u|b|) - 1 <= 4u|b| (checked below); plus one rounding per
  // conversion, power, division and the running product.
  const Real u = unit_roundoff(prec);
  Real per_prime(prec), term(prec);
  mpfr_set_ui(per_prime.get(), 2, MPFR_RNDU);
  for (int j = 2; j <= J; ++j) {
    const BigInt& b = factorization.exponents[static_cast<std::size_t>(j)];
    if (b == 0) continue;
    Real magnitude = Real::from_int(abs(b), prec, MPFR_RNDU);
    mpfr_mul(term.get(), magnitude.get(), u.get(), MPFR_RNDU);
    if (mpfr_cmp_d(term.get(), 0.01) > 0) {
      throw PrecisionError("euler_product: exponent b_" + std::to_string(j) + " too large for working precision",
                           std::numeric_limits<double>::infinity());
    }
    mpfr_mul_ui(magnitude.get(), magnitude.get(), 4, MPFR_RNDU);
    mpfr_add_ui(magnitude.get(), magnitude.get(), 6, MPFR_RNDU);
    mpfr_add(per_prime.get(), per_prime.get(), magnitude.get(), MPFR_RNDU);
  }
  mpfr_mul(per_prime.get(), per_prime.get(), u.get(), MPFR_RNDU);
  mpfr_mul_ui(per_prime.get(), per_prime.get(), static_cast<unsigned long>(std::max<std::uint64_t>(primes_used, 1)),
              MPFR_RNDU);
  mpfr_expm1(per_prime.get(), per_prime.get(), MPFR_RNDU);
  Real product_error(prec);
  mpfr_abs(product_error.get(), product.get(), MPFR_RNDU);
  mpfr_mul(product_error.get(), product_error.get(), per_prime.get(), MPFR_RNDU);
  BoundedReal result(product, product_error);

  // zeta(j)^(-b_j); rho <= 1, so relative budgets translate to absolute ones
  const double zeta_budget = target_error / (4.0 * std::max(J - 1, 1));
  for (int j = 2; j <= J; ++j) {
    const BigInt& b = factorization.exponents[static_cast<std::size_t>(j)];
    if (b == 0) continue;
    const double scale = std::max(1.0, abs(b).convert_to<double>());
    const BoundedReal zeta = exactmath::zeta_value(static_cast<unsigned>(j), zeta_budget / scale, prec);
    result = result * zeta.pow(-b.convert_to<long long>());
  }

  Real one(prec), tail_error(prec);
  mpfr_set_ui(one.get(), 1, MPFR_RNDN);
  mpfr_expm1(tail_error.get(), tail.get(), MPFR_RNDU);
  result = result * BoundedReal(one, tail_error);

  const double achieved = result.error_double();
  if (achieved > target_error) {
    throw PrecisionError("euler_product: certified error " + std::to_string(achieved) + " above target", achieved);
  }
  EulerProductResult out{result, primes_used, J, tail_bound};
  return out;
}

EulerProductResult rho(const coprimality::QPolynomial& q, double target_error, const EulerOptions& options) {
  const std::vector<BigInt> coefficients = to_big(q);
  const int d = std::max(q.degree(), 0);
  auto local = [&coefficients, d](std::uint64_t p) {
    // Q(1/p) = (sum_i c_i p^(d-i)) / p^d
    BigInt numerator = 0;
    const BigInt prime = p;
    for (int i = 0; i <= d; ++i) numerator = numerator * prime + coefficients[static_cast<std::size_t>(i)];
    // Horner above runs from c_0, giving sum_i c_i p^(d-i)
    return ExactRational(numerator, pow_big(prime, static_cast<unsigned>(d)));
  };
  return euler_product(coefficients, local, target_error, options);
}

EulerProductResult rho(const coprimality::GenericGraph& g, double target_error, const EulerOptions& options) {
  return rho(coprimality::q_polynomial(g), target_error, options);
}

ExactRational c_k_local_factor(int k, std::uint64_t p) {
  if (k < 2 || k > 5) throw DomainError("c_k_local_factor: k must be in 2..5");
  const unsigned v = (1u << k) - 1;
  const BigInt prime = p;
  BigInt numerator = 0;
  for (unsigned m = 1; m <= static_cast<unsigned>(k); ++m) {
    numerator += exactmath::stirling2(static_cast<unsigned>(k), m) * factorial(m) * pow_big(prime - 1, v - m);
  }
  return ExactRational(numerator, pow_big(prime, v - 1));
}

std::vector<BigInt> alpha_series_times_power(int k, int N) {
  if (k < 1) throw DomainError("alpha_series_times_power: k must be positive");
  if (N < 0) throw DomainError("alpha_series_times_power: N must be >= 0");
  const auto uN = static_cast<std::size_t>(N);
  std::vector<BigInt> alpha(uN + 1);
  for (std::size_t nu = 0; nu <= uN; ++nu) {
    alpha[nu] = pow_big(BigInt(static_cast<long>(nu) + 1), static_cast<unsigned>(k)) -
                pow_big(BigInt(static_cast<long>(nu)), static_cast<unsigned>(k));
  }
  const unsigned v = (1u << k) - 1;
  std::vector<BigInt> power(std::min<std::size_t>(v, uN) + 1);
  for (std::size_t r = 0; r < power.size(); ++r) {
    power[r] = binomial(v, static_cast<unsigned>(r));
    if (r % 2 == 1) power[r] = -power[r];
  }
  return multiply_truncated(alpha, power, uN);
}

EulerProductResult c_k_expression(int k, double target_error, const EulerOptions& options) {
  if (k < 2 || k > 4) throw DomainError("c_k_expression: k must be in 2..4");
  const int v = (1 << k) - 1;
  const int horizon = 2 * v + options.acceleration_order;
  std::vector<BigInt> series = alpha_series_times_power(k, horizon);
  for (int n = v + 1; n <= horizon; ++n) {
    if (series[static_cast<std::size_t>(n)] != 0) {
      throw ComputationError("c_k_expression: local factor series is not a polynomial of degree <= 2^k - 1");
    }
  }
  series.resize(static_cast<std::size_t>(v) + 1);
  return euler_product(series, [k](std::uint64_t p) { return c_k_local_factor(k, p); }, target_error, options);
}

BoundedReal partial_euler_product(const coprimality::QPolynomial& q, std::uint64_t prime_limit, mpfr_prec_t precision) {
  const auto table = exactmath::sieve(std::max<std::uint64_t>(prime_limit, 2), std::max<std::uint64_t>(prime_limit, 2));
  Real product(precision), factor(precision);
  mpfr_set_ui(product.get(), 1, MPFR_RNDN);
  std::uint64_t count = 0;
  for (const std::uint32_t p : table.primes) {
    if (p > prime_limit) break;
    const ExactRational value = q.evaluate(ExactRational(1, p));
    mpfr_set_q(factor.get(), value.backend().data(), MPFR_RNDN);
    mpfr_mul(product.get(), product.get(), factor.get(), MPFR_RNDN);
    ++count;
  }
  Real error(precision);
  mpfr_set_ui(error.get(), static_cast<unsigned long>(2 * count + 1), MPFR_RNDU);
  mpfr_mul(error.get(), error.get(), unit_roundoff(precision).get(), MPFR_RNDU);
  mpfr_expm1(error.get(), error.get(), MPFR_RNDU);
  Real magnitude(precision);
  mpfr_abs(magnitude.get(), product.get(), MPFR_RNDU);
  mpfr_mul(error.get(), error.get(), magnitude.get(), MPFR_RNDU);
  return BoundedReal(product, error);
}

SeriesCheck series_identity_check(int k, int N) {
  if (k < 2 || k > 4) throw DomainError("series_identity_check: k must be in 2..4");
  if (N < (1 << k)) throw DomainError("series_identity_check: N must be >= 2^k");
  const auto graph = coprimality::build_coprimality_graph(k);
  const coprimality::QPolynomial q = coprimality::q_polynomial(graph.graph);
  SeriesCheck out;
  const std::vector<BigInt> rhs = alpha_series_times_power(k, N);
  for (int n = 0; n <= N; ++n) {
    const BigInt lhs = q.coefficient(static_cast<std::size_t>(n));
    if (lhs != rhs[static_cast<std::size_t>(n)]) {
      std::ostringstream msg;
      msg << "(a) coefficient x^" << n << ": Q=" << lhs << " series=" << rhs[static_cast<std::size_t>(n)];
      out.mismatch_degree = n;
      out.detail = msg.str();
      return out;
    }
  }
  const coprimality::QPolynomial from_stirling =
      coprimality::q_polynomial_from_counts(coprimality::stirling_ism_counts(k));
  std::vector<coprimality::QPolynomial> others{from_stirling};
  if (graph.graph.edge_count() <= coprimality::kMaxEnumerationEdges) {
    others.push_back(coprimality::q_polynomial_by_edge_subsets(graph.graph));
  }
  for (std::size_t route = 0; route < others.size(); ++route) {
    const auto& other = others[route];
    const std::size_t len = std::max(other.coefficients.size(), q.coefficients.size());
    for (std::size_t n = 0; n < len; ++n) {
      if (other.coefficient(n) != q.coefficient(n)) {
        std::ostringstream msg;
        msg << "(b) " << (route == 0 ? "Stirling" : "edge-subset") << " route differs at x^" << n << ": "
            << other.coefficient(n) << " vs " << q.coefficient(n);
        out.mismatch_degree = static_cast<int>(n);
        out.detail = msg.str();
        return out;
      }
    }
  }
  out.ok = true;
  out.detail = "ok";
  return out;
}

HadamardBounds hadamard_constants(int k) {
  if (k < 2) throw DomainError("hadamard_constants: k must be >= 2");
  const double kd = k;
  return {std::pow(kd + 1, (kd + 1) / 2) / std::ldexp(1.0, k), std::ldexp(1.0, k - 1) / std::pow(kd, kd / 2)};
}

}  // namespace lcmsum::eulerprod
