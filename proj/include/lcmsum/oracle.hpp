#pragma once

// Brute-force reciprocal lcm sums and the leading constants assembled from
// Euler products and polytope volumes.

#include "lcmsum/errors.hpp"
#include "lcmsum/rational.hpp"
#include "lcmsum/real.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lcmsum::oracle {

enum class SumKind { S, U, V, Gwise, Alpha };

std::string to_string(SumKind kind);

struct SumReport {
  SumKind kind = SumKind::S;
  int k = 0;
  std::uint64_t x = 0;
  ExactRational value;
  std::uint64_t tuple_count = 0;  // ordered tuples that contributed
};

inline constexpr std::uint64_t kDefaultTupleBudget = 100'000'000;

struct BruteOptions {
  std::uint64_t budget = kDefaultTupleBudget;  // bound on x^k, or on visited nodes for gwise
  unsigned threads = 0;                        // 0: LCMSUM_THREADS or hardware concurrency
};

// Worker count from LCMSUM_THREADS, falling back to the hardware.
unsigned configured_threads();

// sum 1/lcm over n in [1, x]^k.
SumReport brute_S(int k, std::uint64_t x, const BruteOptions& options = {});
// Same sum restricted to gcd(n_1, ..., n_k) = 1.
SumReport brute_U(int k, std::uint64_t x, const BruteOptions& options = {});
// sum n_1 ... n_k / lcm.
SumReport brute_V(int k, std::uint64_t x, const BruteOptions& options = {});

// S_2(1), ..., S_2(x_max) by adding the pairs with max(n_1, n_2) = x.
std::vector<ExactRational> brute_S2_prefix(std::uint64_t x_max);

inline constexpr std::uint64_t kFastS2ExactLimit = 10'000;
inline constexpr std::uint64_t kFastS2Limit = 10'000'000;

// S_2(x) = sum_{d<=x} phi(d)/d^2 * H(x/d)^2. Exact up to kFastS2ExactLimit,
// a certified interval up to kFastS2Limit.
struct FastS2Result {
  std::optional<ExactRational> exact;
  BoundedReal value;
};
FastS2Result fast_S2(std::uint64_t x, mpfr_prec_t precision = kDefaultPrecisionBits);
// The floating branch of fast_S2 for any x, for cross-checks.
BoundedReal fast_S2_certified(std::uint64_t x, mpfr_prec_t precision = kDefaultPrecisionBits);

// sum of 1/(a_1 ... a_v) over G_k-wise coprime a with prod_{j in A_i} a_j <= x
// for every i; fix_last_to_one restricts a_v = 1. 2 <= k <= 4.
SumReport gwise_constrained_sum(int k, std::uint64_t x, bool fix_last_to_one, const BruteOptions& options = {});

// Number of k-tuples with lcm exactly n: prod_{p^nu || n} ((nu+1)^k - nu^k).
BigInt alpha_k(int k, std::uint64_t n);
// sum_{n<=x} alpha_k(n)/n.
SumReport alpha_sum(int k, std::uint64_t x);

// coefficient * sqrt(radicand), radicand squarefree.
struct QuadraticSurd {
  ExactRational coefficient;
  std::uint64_t radicand = 1;

  double to_double() const;
  std::string to_string() const;  // "1/14" or "48/4375*sqrt(5)"
  friend bool operator==(const QuadraticSurd&, const QuadraticSurd&) = default;
};

// Error exponents theta^(1) = theta^(3) and theta^(2); only k >= 3.
struct ThetaExponents {
  QuadraticSurd theta1, theta2, theta3;
};
ThetaExponents theta_exponents(int k);

struct LeadingConstants {
  int k = 0;
  BoundedReal rho;
  ExactRational vol_d, vol_d_star, vol_d_star2;
  BoundedReal c;   // rho(G_k) vol(D_k)
  BoundedReal c2;  // (2^k - 1) c
  BoundedReal c3;  // rho(G_k) vol(D_k**)
  BoundedReal c2_independent;  // rho(G_k minus its isolated vertex) vol(D_k*)
  bool c2_consistent = false;  // intervals overlap and vol(D*)/vol(D) = 2^k - 1
  std::optional<ThetaExponents> theta;
};

inline constexpr double kConstantsTarget = 1e-15;

// 2 <= k <= 4. Euler products and volumes are cached per k.
LeadingConstants leading_constants(int k);

// Cached rho(G_k) to within kConstantsTarget.
BoundedReal rho_of_graph(int k);

struct ConvergenceRow {
  std::uint64_t x = 0;
  std::optional<ExactRational> exact;
  BoundedReal sum;
  std::optional<BoundedReal> normalized;  // sum / log^(2^k-1) x
  BoundedReal c;
  std::optional<BoundedReal> ratio;       // normalized / c
};

// k = 2 uses fast_S2, larger k the brute sum. No pass/fail judgement.
std::vector<ConvergenceRow> convergence_report(int k, const std::vector<std::uint64_t>& xs);

// Natural logarithm of a positive interval.
BoundedReal log_of(const BoundedReal& value);

}  // namespace lcmsum::oracle
