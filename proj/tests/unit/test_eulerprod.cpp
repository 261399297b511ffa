#include "lcmsum/eulerprod.hpp"

#include <doctest.h>

#include <cmath>

using namespace lcmsum;
using namespace lcmsum::eulerprod;

namespace {

std::vector<BigInt> big(std::initializer_list<long> values) {
  std::vector<BigInt> out;
  for (const long v : values) out.emplace_back(v);
  return out;
}

BoundedReal six_over_pi_squared() {
  Real pi(256);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  const BoundedReal p(pi, rounding_bound(pi));
  return BoundedReal::from_rational(ExactRational(6), 256) / (p * p);
}

coprimality::QPolynomial q_of(int k) { return coprimality::q_polynomial(coprimality::build_coprimality_graph(k).graph); }

}  // namespace

TEST_CASE("zeta factorization of 1 - x^2") {
  const auto f = zeta_factorization(big({1, 0, -1}), 6);
  CHECK(f.exponent(2) == 1);
  for (int j = 3; j <= 6; ++j) CHECK(f.exponent(j) == 0);
  CHECK(f.residual_series[0] == 1);
  for (std::size_t i = 1; i < f.residual_series.size(); ++i) CHECK(f.residual_series[i] == 0);
}

TEST_CASE("zeta factorization of Q_{G_3} leaves 1 + O(x^{J+1})") {
  const auto q = q_of(3);
  std::vector<BigInt> coefficients;
  for (const auto c : q.coefficients) coefficients.emplace_back(c);
  for (const int order : {4, 8, 12}) {
    const auto f = zeta_factorization(coefficients, order);
    CHECK(f.exponent(2) == 9);
    CHECK(f.exponent(3) == -16);
    for (int n = 1; n <= order; ++n) CHECK(f.residual_series[static_cast<std::size_t>(n)] == 0);
  }
}

TEST_CASE("zeta factorization rejects bad inputs") {
  CHECK_THROWS_AS(zeta_factorization(big({1, 1}), 4), ComputationError);
  CHECK_THROWS_AS(zeta_factorization(big({2, 0, 1}), 4), ComputationError);
  CHECK_THROWS_AS(zeta_factorization(big({1, 0, 1}), 0), DomainError);
}

TEST_CASE("rho of G_2 is 6/pi^2") {
  const auto r = rho(q_of(2), 1e-20);
  CHECK(r.value.error_double() <= 1e-20);
  CHECK(r.value.overlaps(six_over_pi_squared()));
  CHECK(r.acceleration_order == 12);
  CHECK(r.primes_used == 78498);
}

TEST_CASE("rho of an edgeless graph is 1") {
  const auto r = rho(coprimality::GenericGraph(4, {}), 1e-20);
  CHECK(r.value.contains(ExactRational(1)));
}

TEST_CASE("rho agrees with the C_k expression") {
  for (int k = 2; k <= 4; ++k) {
    const auto a = rho(q_of(k), 1e-15);
    const auto b = c_k_expression(k, 1e-15);
    CHECK(a.value.overlaps(b.value));
  }
}

TEST_CASE("rho decreases with k") {
  const auto r2 = rho(q_of(2), 1e-15).value;
  const auto r3 = rho(q_of(3), 1e-15).value;
  const auto r4 = rho(q_of(4), 1e-15).value;
  CHECK(r3.certainly_less(r2));
  CHECK(r4.certainly_less(r3));
  CHECK(r4.certainly_positive());
}

TEST_CASE("changing the acceleration order or prime limit keeps the intervals overlapping") {
  const auto q = q_of(3);
  EulerOptions low;
  low.acceleration_order = 8;
  low.prime_limit = 200'000;
  const auto a = rho(q, 1e-12, low).value;
  const auto b = rho(q, 1e-12).value;
  CHECK(a.overlaps(b));
}

TEST_CASE("unaccelerated partial product sits inside the crude tail window") {
  const auto q = q_of(3);
  std::vector<BigInt> coefficients;
  for (const auto c : q.coefficients) coefficients.emplace_back(c);
  // with J = 1, |log Q(1/p)| <= K p^-2, so the primes above P move the log by at most K / P
  const BigInt k_const = tail_constant(coefficients, zeta_factorization(coefficients, 1));
  const double window = k_const.convert_to<double>() / 1e4;
  const BoundedReal partial = partial_euler_product(q, 10'000);
  const BoundedReal full = rho(q, 1e-15).value;
  const double ratio = partial.value_double() / full.value_double();
  CHECK(std::abs(std::log(ratio)) <= window);
  CHECK(ratio > 1.0);
}

TEST_CASE("precision failures are reported") {
  EulerOptions tight;
  tight.prime_limit = 50;
  CHECK_THROWS_AS(rho(q_of(3), 1e-15, tight), PrecisionError);
  EulerOptions below_roots;
  below_roots.prime_limit = 3;
  CHECK_THROWS_AS(rho(q_of(4), 1e-3, below_roots), PrecisionError);
}

TEST_CASE("local factor of the C_2 expression is 1 - 1/p^2") {
  for (const std::uint64_t p : {2ULL, 3ULL, 5ULL, 97ULL}) {
    CHECK(c_k_local_factor(2, p) == ExactRational(1) - ExactRational(1, p * p));
  }
  for (const std::uint64_t p : {2ULL, 7ULL}) {
    CHECK(c_k_local_factor(3, p) == q_of(3).evaluate(ExactRational(1, p)));
  }
}

TEST_CASE("series identities") {
  const auto s = alpha_series_times_power(2, 10);
  CHECK(s == big({1, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0}));
  for (int k = 2; k <= 4; ++k) {
    const auto check = series_identity_check(k, 30);
    CHECK(check.ok);
    CHECK(check.mismatch_degree == -1);
  }
  CHECK_THROWS_AS(series_identity_check(3, 7), DomainError);
}

TEST_CASE("closed-form zero-one matrix bounds") {
  const auto h2 = hadamard_constants(2);
  const auto h3 = hadamard_constants(3);
  const auto h4 = hadamard_constants(4);
  CHECK(h3.C_bound == doctest::Approx(2.0));
  CHECK(h3.c_bound == doctest::Approx(4.0 / std::pow(3.0, 1.5)));
  CHECK(h2.C_bound == doctest::Approx(1.299038105676658));
  CHECK(h4.C_bound == doctest::Approx(3.493856214843422));
}
