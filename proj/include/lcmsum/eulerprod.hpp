#pragma once

// Certified Euler products prod_p F(1/p) for integer polynomials F with
// F(0) = 1 and no linear term, accelerated by peeling off zeta factors:
//   F(x) = prod_{j=2}^{J} (1 - x^j)^{b_j} * R(x),   R(x) = 1 + O(x^{J+1}),
//   prod_p F(1/p) = prod_j zeta(j)^{-b_j} * prod_p R(1/p).

#include "lcmsum/coprimality.hpp"
#include "lcmsum/errors.hpp"
#include "lcmsum/rational.hpp"
#include "lcmsum/real.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace lcmsum::eulerprod {

struct ZetaFactorization {
  int acceleration_order = 0;           // J
  std::vector<BigInt> exponents;        // exponents[j] = b_j for 2 <= j <= J (0 and 1 unused)
  std::vector<BigInt> residual_series;  // R(x) coefficients through degree 2J

  BigInt exponent(int j) const { return exponents.at(static_cast<std::size_t>(j)); }
};

// b_j from the power sums s_n of the reciprocal roots (Newton), by Moebius
// inversion of s_n = sum_{j | n} j b_j. Throws ComputationError when some
// b_j is not an integer, when F(0) != 1, or when the linear term is non-zero;
// the residual R is verified to be 1 + O(x^{J+1}) exactly.
ZetaFactorization zeta_factorization(const std::vector<BigInt>& coefficients, int acceleration_order);

struct EulerOptions {
  int acceleration_order = 12;
  std::uint64_t prime_limit = 1'000'000;
  mpfr_prec_t precision = kDefaultPrecisionBits;
};

struct EulerProductResult {
  BoundedReal value;
  std::uint64_t primes_used = 0;
  int acceleration_order = 0;
  double tail_bound = 0;  // bound on |log prod_{p > P} R(1/p)|
};

// Explicit K with |log R(1/p)| <= K p^-(J+1) for every prime p >= 2B, where
// B bounds the reciprocal roots of F. `root_bound` receives B.
BigInt tail_constant(const std::vector<BigInt>& coefficients, const ZetaFactorization& factorization,
                     BigInt* root_bound = nullptr);

// Generic engine: `local_factor(p)` must return F(1/p) exactly.
EulerProductResult euler_product(const std::vector<BigInt>& coefficients,
                                 const std::function<ExactRational(std::uint64_t)>& local_factor,
                                 double target_error, const EulerOptions& options = {});

// rho(G) = prod_p Q_G(1/p).
EulerProductResult rho(const coprimality::QPolynomial& q, double target_error, const EulerOptions& options = {});
EulerProductResult rho(const coprimality::GenericGraph& g, double target_error, const EulerOptions& options = {});

// prod_p (1 - 1/p)^(2^k - 1) sum_nu ((nu+1)^k - nu^k) p^-nu, with the local
// factor in the closed form sum_m S(k,m) m! x^(m-1) (1-x)^(v-m).
EulerProductResult c_k_expression(int k, double target_error, const EulerOptions& options = {});

// Exact local factor of c_k_expression at x = 1/p.
ExactRational c_k_local_factor(int k, std::uint64_t p);

// Coefficients of (1-x)^(2^k-1) sum_{nu<=N} ((nu+1)^k - nu^k) x^nu mod x^{N+1}.
std::vector<BigInt> alpha_series_times_power(int k, int N);

// Plain prod_{p <= limit} F(1/p) without acceleration or tail.
BoundedReal partial_euler_product(const coprimality::QPolynomial& q, std::uint64_t prime_limit,
                                  mpfr_prec_t precision = kDefaultPrecisionBits);

struct SeriesCheck {
  bool ok = false;
  int mismatch_degree = -1;  // first failing coefficient, -1 when ok
  std::string detail;
};

// (a) Q_{G_k} = (1-x)^(2^k-1) sum_{nu<=N} ((nu+1)^k - nu^k) x^nu + O(x^{N+1});
// (b) Q_{G_k} = sum_m i_m(G_k) (1-x)^(v-m) x^m with the Stirling counts,
//     and (k <= 3) also equals the edge-subset expansion.
SeriesCheck series_identity_check(int k, int N);

// Closed-form zero-one matrix bounds.
struct HadamardBounds {
  double C_bound = 0;  // (k+1)^((k+1)/2) / 2^k
  double c_bound = 0;  // 2^(k-1) / k^(k/2)
};

HadamardBounds hadamard_constants(int k);

}  // namespace lcmsum::eulerprod
