#include "lcmsum/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace lcmsum;
using namespace lcmsum::oracle;

namespace {

// Ordered enumeration with a running rational sum: no symmetry, no histogram.
struct NaiveSums {
  ExactRational s = 0, u = 0, v = 0;
};

NaiveSums naive_sums(int k, std::uint64_t x) {
  NaiveSums out;
  std::vector<std::uint64_t> n(static_cast<std::size_t>(k), 1);
  while (true) {
    std::uint64_t lcm = 1, gcd = 0, product = 1;
    for (const auto value : n) {
      lcm = std::lcm(lcm, value);
      gcd = std::gcd(gcd, value);
      product *= value;
    }
    out.s += ExactRational(1, lcm);
    if (gcd == 1) out.u += ExactRational(1, lcm);
    out.v += ExactRational(product / lcm);
    std::size_t i = 0;
    while (i < n.size() && n[i] == x) n[i++] = 1;
    if (i == n.size()) break;
    ++n[i];
  }
  return out;
}

std::uint64_t lcm_count(int k, std::uint64_t target) {
  std::vector<std::uint64_t> n(static_cast<std::size_t>(k), 1);
  std::uint64_t count = 0;
  while (true) {
    std::uint64_t lcm = 1;
    for (const auto value : n) lcm = std::lcm(lcm, value);
    count += lcm == target ? 1 : 0;
    std::size_t i = 0;
    while (i < n.size() && n[i] == target) n[i++] = 1;
    if (i == n.size()) break;
    ++n[i];
  }
  return count;
}

BoundedReal two_over_pi_squared() {
  Real pi(256);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  const BoundedReal p(pi, rounding_bound(pi));
  return BoundedReal::from_rational(ExactRational(2), 256) / (p * p);
}

}  // namespace

TEST_CASE("brute sums: small values") {
  CHECK(brute_S(2, 1).value == 1);
  CHECK(brute_S(2, 2).value == ExactRational(5, 2));
  CHECK(brute_S(3, 2).value == ExactRational(9, 2));
  CHECK(brute_U(2, 2).value == 2);
  CHECK(brute_U(2, 3).value == 3);
  CHECK(brute_U(4, 1).value == 1);
  CHECK(brute_V(2, 2).value == 5);
  CHECK(brute_V(2, 3).value == 12);
  CHECK(brute_V(3, 1).value == 1);
  CHECK(brute_S(2, 3).tuple_count == 9);
  CHECK(brute_U(2, 2).tuple_count == 3);
}

TEST_CASE("brute sums against ordered enumeration") {
  for (int k = 1; k <= 4; ++k) {
    for (std::uint64_t x = 1; x <= (k <= 2 ? 25u : 9u); ++x) {
      const NaiveSums naive = naive_sums(k, x);
      CHECK(brute_S(k, x).value == naive.s);
      CHECK(brute_U(k, x).value == naive.u);
      CHECK(brute_V(k, x).value == naive.v);
    }
  }
}

TEST_CASE("brute sums do not depend on the thread count") {
  BruteOptions one, three;
  one.threads = 1;
  three.threads = 3;
  CHECK(brute_S(3, 40, one).value == brute_S(3, 40, three).value);
  CHECK(brute_U(3, 40, one).value == brute_U(3, 40, three).value);
  CHECK(brute_V(2, 300, one).value == brute_V(2, 300, three).value);
}

TEST_CASE("brute sums respect the budget") {
  BruteOptions small;
  small.budget = 1000;
  CHECK_THROWS_AS(brute_S(3, 11, small), ResourceError);
  CHECK_NOTHROW(brute_S(3, 10, small));
  CHECK_THROWS_AS(brute_S(2, 0), DomainError);
}

TEST_CASE("fast S_2 is exact below the switch-over") {
  CHECK(fast_S2(1).exact == ExactRational(1));
  CHECK(fast_S2(2).exact == ExactRational(5, 2));
  const auto prefix = brute_S2_prefix(300);
  for (std::uint64_t x = 1; x <= 300; ++x) CHECK(*fast_S2(x).exact == prefix[x - 1]);
  CHECK(prefix[99] == brute_S(2, 100).value);
}

TEST_CASE("certified fast S_2 encloses the exact value") {
  for (const std::uint64_t x : {1ULL, 17ULL, 2500ULL, 10000ULL}) {
    const auto exact = fast_S2(x).exact;
    REQUIRE(exact);
    const BoundedReal interval = fast_S2_certified(x);
    CHECK(interval.contains(*exact));
    CHECK(interval.error_double() < 1e-30);
  }
  CHECK_FALSE(fast_S2(10'001).exact);
  CHECK_THROWS_AS(fast_S2(20'000'000), ResourceError);
}

TEST_CASE("decomposition identity on small ranges") {
  CHECK(gwise_constrained_sum(2, 1, false).value == 1);
  CHECK(gwise_constrained_sum(2, 10, false).value == brute_S(2, 10).value);
  CHECK(gwise_constrained_sum(3, 10, true).value == brute_U(3, 10).value);
  for (std::uint64_t x = 1; x <= 6; ++x) {
    CHECK(gwise_constrained_sum(4, x, false).value == brute_S(4, x).value);
    CHECK(gwise_constrained_sum(4, x, true).value == brute_U(4, x).value);
  }
  BruteOptions small;
  small.budget = 50;
  CHECK_THROWS_AS(gwise_constrained_sum(3, 20, false, small), ResourceError);
}

TEST_CASE("alpha_k counts tuples with a given lcm") {
  CHECK(alpha_k(3, 13) == 7);
  CHECK(alpha_k(3, 1) == 1);
  CHECK(alpha_k(2, 4) == 5);
  for (int k = 2; k <= 3; ++k) {
    for (std::uint64_t n = 1; n <= (k == 2 ? 60u : 24u); ++n) CHECK(alpha_k(k, n) == lcm_count(k, n));
  }
}

TEST_CASE("alpha sums") {
  CHECK(alpha_sum(2, 2).value == ExactRational(5, 2));
  CHECK(alpha_sum(4, 1).value == 1);
  CHECK(alpha_sum(3, 4).value == ExactRational(1) + ExactRational(7, 2) + ExactRational(7, 3) + ExactRational(19, 4));
  for (std::uint64_t x = 1; x <= 30; ++x) {
    CHECK(alpha_sum(2, x).value <= brute_S(2, x).value);
    CHECK(brute_U(2, x).value <= brute_S(2, x).value);
  }
}

TEST_CASE("error exponents") {
  const auto t3 = theta_exponents(3);
  CHECK(t3.theta1.to_string() == "1/14");
  CHECK(t3.theta2.to_string() == "3/40");
  CHECK(t3.theta3 == t3.theta1);
  const auto t4 = theta_exponents(4);
  CHECK(t4.theta1.radicand == 5);
  CHECK(t4.theta1.to_double() == doctest::Approx(16.0 / std::pow(5.0, 2.5) * 3.0 / 35.0));
  CHECK(t4.theta2.to_double() == doctest::Approx(16.0 / std::pow(5.0, 2.5) * 3.0 / 34.0));
  CHECK_THROWS_AS(theta_exponents(2), DomainError);
}

TEST_CASE("leading constants for k = 2, 3") {
  const auto lc2 = leading_constants(2);
  CHECK(lc2.c.overlaps(two_over_pi_squared()));
  CHECK(lc2.c2_consistent);
  CHECK_FALSE(lc2.theta.has_value());
  const auto lc3 = leading_constants(3);
  CHECK(lc3.vol_d == ExactRational(11, 3360));
  CHECK(lc3.c2_consistent);
  CHECK(lc3.c.value_double() == doctest::Approx(0.00016147).epsilon(1e-4));
  CHECK(lc3.c3.certainly_positive());
  CHECK(lc3.c.certainly_less(lc2.c));
  REQUIRE(lc3.theta.has_value());
  CHECK(lc3.theta->theta2.to_string() == "3/40");
}

TEST_CASE("convergence report") {
  const auto rows = convergence_report(2, {1, 1000, 20000});
  REQUIRE(rows.size() == 3);
  CHECK_FALSE(rows[0].ratio.has_value());
  CHECK(rows[1].exact.has_value());
  CHECK_FALSE(rows[2].exact.has_value());
  CHECK(rows[2].ratio->value_double() < rows[1].ratio->value_double());
  const auto k3 = convergence_report(3, {10, 20});
  for (const auto& row : k3) CHECK(row.ratio->certainly_positive());
}

TEST_CASE("log of an interval") {
  const BoundedReal e = log_of(BoundedReal::from_rational(ExactRational(1000)));
  CHECK(e.value_double() == doctest::Approx(std::log(1000.0)));
  CHECK_THROWS_AS(log_of(BoundedReal::from_rational(ExactRational(0))), DomainError);
}
