#include "lcmsum/oracle.hpp"

#include "lcmsum/coprimality.hpp"
#include "lcmsum/eulerprod.hpp"
#include "lcmsum/polytope.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_map>

namespace lcmsum::oracle {

namespace {

using Histogram = std::unordered_map<std::uint64_t, std::uint64_t>;

void check_k(int k, int lo, int hi, const char* op) {
  if (k < lo || k > hi) {
    throw DomainError(std::string(op) + ": k must be in " + std::to_string(lo) + ".." + std::to_string(hi));
  }
}

void check_budget(int k, std::uint64_t x, std::uint64_t budget, const char* op) {
  if (x == 0) throw DomainError(std::string(op) + ": x must be >= 1");
  long double total = 1;
  for (int i = 0; i < k; ++i) total *= static_cast<long double>(x);
  if (total > static_cast<long double>(budget)) {
    throw ResourceError(std::string(op) + ": x^k exceeds the tuple budget of " + std::to_string(budget));
  }
}

// Sorted tuples n_1 <= ... <= n_k, each weighted by its number of orderings.
class SortedTupleWalker {
 public:
  SortedTupleWalker(int k, std::uint64_t x, SumKind kind) : k_(k), x_(x), kind_(kind), tuple_(static_cast<std::size_t>(k)) {
    for (int i = 0; i <= k; ++i) factorials_.push_back(i == 0 ? 1 : factorials_.back() * static_cast<std::uint64_t>(i));
  }

  void run_first(std::uint64_t first) {
    tuple_[0] = first;
    descend(1, first, first, first, first);
  }

  Histogram histogram;
  unsigned __int128 integer_sum = 0;
  std::uint64_t tuples = 0;

 private:
  void descend(int pos, std::uint64_t lo, std::uint64_t lcm, std::uint64_t gcd, std::uint64_t product) {
    if (pos == k_) {
      finish(lcm, gcd, product);
      return;
    }
    for (std::uint64_t n = lo; n <= x_; ++n) {
      tuple_[static_cast<std::size_t>(pos)] = n;
      descend(pos + 1, n, std::lcm(lcm, n), std::gcd(gcd, n), product * n);
    }
  }

  void finish(std::uint64_t lcm, std::uint64_t gcd, std::uint64_t product) {
    if (kind_ == SumKind::U && gcd != 1) return;
    std::uint64_t divisor = 1;
    std::size_t run = 1;
    for (std::size_t i = 1; i <= tuple_.size(); ++i) {
      if (i < tuple_.size() && tuple_[i] == tuple_[i - 1]) {
        ++run;
      } else {
        divisor *= factorials_[run];
        run = 1;
      }
    }
    const std::uint64_t multiplicity = factorials_[static_cast<std::size_t>(k_)] / divisor;
    tuples += multiplicity;
    if (kind_ == SumKind::V) {
      integer_sum += static_cast<unsigned __int128>(multiplicity) * (product / lcm);
    } else {
      histogram[lcm] += multiplicity;
    }
  }

  int k_;
  std::uint64_t x_;
  SumKind kind_;
  std::vector<std::uint64_t> tuple_;
  std::vector<std::uint64_t> factorials_;
};

BigInt from_u128(unsigned __int128 value) {
  BigInt high = static_cast<std::uint64_t>(value >> 64);
  return (high << 64) + BigInt(static_cast<std::uint64_t>(value));
}

SumReport brute_sum(SumKind kind, int k, std::uint64_t x, const BruteOptions& options, const char* op) {
  check_k(k, 1, 16, op);
  check_budget(k, x, options.budget, op);
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads ? options.threads : configured_threads(),
                                                           static_cast<unsigned>(x)));
  std::vector<SortedTupleWalker> walkers;
  for (unsigned t = 0; t < threads; ++t) walkers.emplace_back(k, x, kind);
  auto work = [&](unsigned t) {
    for (std::uint64_t first = 1 + t; first <= x; first += threads) walkers[t].run_first(first);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  // merge in worker order into an ordered histogram
  std::map<std::uint64_t, BigInt> merged;
  BigInt integer_sum = 0;
  SumReport report{kind, k, x, ExactRational(0), 0};
  for (const auto& walker : walkers) {
    for (const auto& [lcm, count] : walker.histogram) merged[lcm] += count;
    integer_sum += from_u128(walker.integer_sum);
    report.tuple_count += walker.tuples;
  }
  report.value = kind == SumKind::V ? ExactRational(integer_sum) : sum_reciprocals(merged);
  return report;
}

std::vector<std::uint32_t> totients(std::uint64_t x) {
  std::vector<std::uint32_t> phi(x + 1);
  std::iota(phi.begin(), phi.end(), 0u);
  for (std::uint64_t p = 2; p <= x; ++p) {
    if (phi[p] != p) continue;
    for (std::uint64_t m = p; m <= x; m += p) phi[m] -= phi[m] / static_cast<std::uint32_t>(p);
  }
  return phi;
}

ExactRational fast_S2_exact(std::uint64_t x) {
  // common denominator L = lcm(1..x): H(m) = h_m / L, phi(d)/d^2 = phi(d) (L/d)^2 / L^2
  BigInt common = 1;
  for (std::uint64_t j = 2; j <= x; ++j) mpz_lcm_ui(common.backend().data(), common.backend().data(), j);
  std::vector<BigInt> harmonic(x + 1, 0);
  BigInt scaled;
  for (std::uint64_t m = 1; m <= x; ++m) {
    mpz_divexact_ui(scaled.backend().data(), common.backend().data(), m);
    harmonic[m] = harmonic[m - 1] + scaled;
  }
  const auto phi = totients(x);
  BigInt numerator = 0;
  for (std::uint64_t d = 1; d <= x; ++d) {
    mpz_divexact_ui(scaled.backend().data(), common.backend().data(), d);
    const BigInt& h = harmonic[x / d];
    numerator += phi[d] * scaled * scaled * h * h;
  }
  return ExactRational(numerator, pow_big(common, 4));
}

BoundedReal fast_S2_interval(std::uint64_t x, mpfr_prec_t prec) {
  const auto phi = totients(x);
  Real sum(prec), harmonic(prec), term(prec), step(prec);
  mpfr_set_ui(sum.get(), 0, MPFR_RNDN);
  mpfr_set_ui(harmonic.get(), 0, MPFR_RNDN);
  std::uint64_t filled = 0;
  // d descending, so x/d only grows and H can be extended in place
  for (std::uint64_t d = x; d >= 1; --d) {
    const std::uint64_t q = x / d;
    while (filled < q) {
      ++filled;
      mpfr_set_ui(step.get(), static_cast<unsigned long>(filled), MPFR_RNDN);
      mpfr_ui_div(step.get(), 1, step.get(), MPFR_RNDN);
      mpfr_add(harmonic.get(), harmonic.get(), step.get(), MPFR_RNDN);
    }
    mpfr_sqr(term.get(), harmonic.get(), MPFR_RNDN);
    mpfr_mul_ui(term.get(), term.get(), phi[d], MPFR_RNDN);
    mpfr_div_ui(term.get(), term.get(), static_cast<unsigned long>(d), MPFR_RNDN);
    mpfr_div_ui(term.get(), term.get(), static_cast<unsigned long>(d), MPFR_RNDN);
    mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
  }
  // H(q) carries <= (q+1)u relative error; each term adds five more
  // roundings, the running sum one per step: (4x + 16)u covers all of it.
  Real error(prec);
  mpfr_set_ui(error.get(), 1, MPFR_RNDU);
  mpfr_mul_2si(error.get(), error.get(), -static_cast<long>(prec), MPFR_RNDU);
  mpfr_mul_ui(error.get(), error.get(), static_cast<unsigned long>(4 * x + 16), MPFR_RNDU);
  mpfr_expm1(error.get(), error.get(), MPFR_RNDU);
  mpfr_mul(error.get(), error.get(), sum.get(), MPFR_RNDU);
  return BoundedReal(sum, error);
}

std::uint64_t squarefree_part(std::uint64_t n, std::uint64_t& square_root_factor) {
  square_root_factor = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    while (n % (p * p) == 0) {
      n /= p * p;
      square_root_factor *= p;
    }
  }
  return n;
}

// 2^k / (k+1)^((k+1)/2) as a surd.
QuadraticSurd hadamard_scale(int k) {
  const std::uint64_t base = static_cast<std::uint64_t>(k) + 1;
  const BigInt two_k = pow_big(BigInt(2), static_cast<unsigned>(k));
  if (base % 2 == 0) {
    return {ExactRational(two_k, pow_big(BigInt(base), static_cast<unsigned>(base / 2))), 1};
  }
  // (k+1)^((k+1)/2) = (k+1)^(k/2) sqrt(k+1), and 1/sqrt(n) = sqrt(n)/n
  std::uint64_t outside = 1;
  const std::uint64_t radicand = squarefree_part(base, outside);
  ExactRational coefficient(two_k, pow_big(BigInt(base), static_cast<unsigned>(k / 2)) * base);
  coefficient *= outside;
  return {coefficient, radicand};
}

}  // namespace

std::string to_string(SumKind kind) {
  switch (kind) {
    case SumKind::S: return "S";
    case SumKind::U: return "U";
    case SumKind::V: return "V";
    case SumKind::Gwise: return "gwise";
    case SumKind::Alpha: return "alpha";
  }
  return "?";
}

unsigned configured_threads() {
  if (const char* env = std::getenv("LCMSUM_THREADS")) {
    const long value = std::strtol(env, nullptr, 10);
    if (value > 0) return static_cast<unsigned>(std::min(value, 256L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SumReport brute_S(int k, std::uint64_t x, const BruteOptions& options) {
  return brute_sum(SumKind::S, k, x, options, "brute_S");
}

SumReport brute_U(int k, std::uint64_t x, const BruteOptions& options) {
  return brute_sum(SumKind::U, k, x, options, "brute_U");
}

SumReport brute_V(int k, std::uint64_t x, const BruteOptions& options) {
  return brute_sum(SumKind::V, k, x, options, "brute_V");
}

std::vector<ExactRational> brute_S2_prefix(std::uint64_t x_max) {
  check_budget(2, x_max, kDefaultTupleBudget, "brute_S2_prefix");
  std::vector<ExactRational> out;
  out.reserve(x_max);
  ExactRational total = 0;
  for (std::uint64_t x = 1; x <= x_max; ++x) {
    std::map<std::uint64_t, BigInt> histogram;
    histogram[x] += 1;
    for (std::uint64_t n = 1; n < x; ++n) histogram[std::lcm(n, x)] += 2;
    total += sum_reciprocals(histogram);
    out.push_back(total);
  }
  return out;
}

FastS2Result fast_S2(std::uint64_t x, mpfr_prec_t precision) {
  if (x == 0) throw DomainError("fast_S2: x must be >= 1");
  if (x > kFastS2Limit) throw ResourceError("fast_S2: x above " + std::to_string(kFastS2Limit));
  FastS2Result out;
  if (x <= kFastS2ExactLimit) {
    out.exact = fast_S2_exact(x);
    out.value = BoundedReal::from_rational(*out.exact, precision);
  } else {
    out.value = fast_S2_interval(x, precision);
  }
  return out;
}

BoundedReal fast_S2_certified(std::uint64_t x, mpfr_prec_t precision) {
  if (x == 0) throw DomainError("fast_S2_certified: x must be >= 1");
  if (x > kFastS2Limit) throw ResourceError("fast_S2_certified: x above " + std::to_string(kFastS2Limit));
  return fast_S2_interval(x, precision);
}

SumReport gwise_constrained_sum(int k, std::uint64_t x, bool fix_last_to_one, const BruteOptions& options) {
  check_k(k, 2, 4, "gwise_constrained_sum");
  if (x == 0) throw DomainError("gwise_constrained_sum: x must be >= 1");
  const auto g = coprimality::build_coprimality_graph(k);
  const int v = g.vertex_count();
  std::vector<std::vector<int>> member_of(static_cast<std::size_t>(v) + 1);
  for (std::size_t i = 0; i < g.constraints.size(); ++i) {
    for (const int j : g.constraints[i]) member_of[static_cast<std::size_t>(j)].push_back(static_cast<int>(i));
  }
  // labels in most-constrained-first order
  std::vector<int> order(static_cast<std::size_t>(v));
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return member_of[static_cast<std::size_t>(a)].size() > member_of[static_cast<std::size_t>(b)].size();
  });

  std::vector<std::uint64_t> a(static_cast<std::size_t>(v) + 1, 0);
  std::vector<std::uint64_t> products(g.constraints.size(), 1);
  std::map<std::uint64_t, BigInt> histogram;
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;

  auto visit = [&](auto&& self, std::size_t depth, std::uint64_t product) -> void {
    if (++nodes > options.budget) throw ResourceError("gwise_constrained_sum: node budget exceeded");
    if (depth == order.size()) {
      histogram[product] += 1;
      ++leaves;
      return;
    }
    const int label = order[depth];
    std::uint64_t limit = x;
    for (const int i : member_of[static_cast<std::size_t>(label)]) limit = std::min(limit, x / products[static_cast<std::size_t>(i)]);
    if (fix_last_to_one && label == v) limit = std::min<std::uint64_t>(limit, 1);
    for (std::uint64_t value = 1; value <= limit; ++value) {
      bool coprime = true;
      if (value > 1) {
        for (std::size_t prev = 0; prev < depth && coprime; ++prev) {
          const int other = order[prev];
          if (g.graph.has_edge(label, other) && std::gcd(value, a[static_cast<std::size_t>(other)]) != 1) coprime = false;
        }
      }
      if (!coprime) continue;
      a[static_cast<std::size_t>(label)] = value;
      for (const int i : member_of[static_cast<std::size_t>(label)]) products[static_cast<std::size_t>(i)] *= value;
      self(self, depth + 1, product * value);
      for (const int i : member_of[static_cast<std::size_t>(label)]) products[static_cast<std::size_t>(i)] /= value;
    }
    a[static_cast<std::size_t>(label)] = 0;
  };
  visit(visit, 0, 1);
  return {SumKind::Gwise, k, x, sum_reciprocals(histogram), leaves};
}

BigInt alpha_k(int k, std::uint64_t n) {
  check_k(k, 1, 64, "alpha_k");
  if (n == 0) throw DomainError("alpha_k: n must be >= 1");
  BigInt out = 1;
  auto factor = [&](unsigned nu) {
    out *= pow_big(BigInt(nu + 1), static_cast<unsigned>(k)) - pow_big(BigInt(nu), static_cast<unsigned>(k));
  };
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    unsigned nu = 0;
    while (n % p == 0) {
      n /= p;
      ++nu;
    }
    if (nu) factor(nu);
  }
  if (n > 1) factor(1);
  return out;
}

SumReport alpha_sum(int k, std::uint64_t x) {
  if (x == 0) throw DomainError("alpha_sum: x must be >= 1");
  if (x > 10'000'000) throw ResourceError("alpha_sum: x above the sieve limit");
  std::map<std::uint64_t, BigInt> histogram;
  std::uint64_t tuples = 0;
  for (std::uint64_t n = 1; n <= x; ++n) {
    const BigInt count = alpha_k(k, n);
    histogram.emplace(n, count);
    tuples += count.convert_to<std::uint64_t>();
  }
  return {SumKind::Alpha, k, x, sum_reciprocals(histogram), tuples};
}

double QuadraticSurd::to_double() const {
  return coefficient.convert_to<double>() * std::sqrt(static_cast<double>(radicand));
}

std::string QuadraticSurd::to_string() const {
  std::string out = lcmsum::to_string(coefficient);
  if (radicand != 1) out += "*sqrt(" + std::to_string(radicand) + ")";
  return out;
}

ThetaExponents theta_exponents(int k) {
  check_k(k, 3, 30, "theta_exponents");
  const QuadraticSurd scale = hadamard_scale(k);
  const BigInt two_k = pow_big(BigInt(2), static_cast<unsigned>(k));
  QuadraticSurd first{scale.coefficient * ExactRational(3, two_k + 6 * k - 5), scale.radicand};
  QuadraticSurd second{scale.coefficient * ExactRational(3, two_k + 6 * k - 6), scale.radicand};
  return {first, second, first};
}

BoundedReal rho_of_graph(int k) {
  check_k(k, 2, 4, "rho_of_graph");
  static std::mutex mutex;
  static std::map<int, BoundedReal> cache;
  {
    std::lock_guard lock(mutex);
    if (const auto it = cache.find(k); it != cache.end()) return it->second;
  }
  const auto g = coprimality::build_coprimality_graph(k);
  BoundedReal value = eulerprod::rho(g.graph, kConstantsTarget).value;
  std::lock_guard lock(mutex);
  cache.emplace(k, value);
  return value;
}

LeadingConstants leading_constants(int k) {
  check_k(k, 2, 4, "leading_constants");
  using polytope::PolytopeKind;
  LeadingConstants out;
  out.k = k;
  out.rho = rho_of_graph(k);
  out.vol_d = polytope::cached_volume(PolytopeKind::D, k);
  out.vol_d_star = polytope::cached_volume(PolytopeKind::DStar, k);
  out.vol_d_star2 = polytope::cached_volume(PolytopeKind::DStar2, k);
  out.c = out.rho * out.vol_d;
  const ExactRational v_k((1 << k) - 1);
  out.c2 = out.c * v_k;
  out.c3 = out.rho * out.vol_d_star2;

  // the all-ones label is isolated; drop it and recompute independently
  const auto g = coprimality::build_coprimality_graph(k);
  const coprimality::GenericGraph reduced(g.vertex_count() - 1, g.graph.edges());
  const BoundedReal rho_reduced = eulerprod::rho(reduced, kConstantsTarget).value;
  out.c2_independent = rho_reduced * out.vol_d_star;
  out.c2_consistent = out.c2.overlaps(out.c2_independent) && out.vol_d_star / out.vol_d == v_k;
  if (k >= 3) out.theta = theta_exponents(k);
  return out;
}

BoundedReal log_of(const BoundedReal& value) {
  if (!value.certainly_positive()) throw DomainError("log_of: interval not strictly positive");
  const mpfr_prec_t prec = value.precision();
  Real centre(prec), error(prec);
  mpfr_log(centre.get(), value.value().get(), MPFR_RNDN);
  // |log(v +- e) - log v| <= e / (v - e)
  const Real low = value.lower();
  mpfr_div(error.get(), value.abs_error().get(), low.get(), MPFR_RNDU);
  Real rounding = rounding_bound(centre);
  mpfr_add(error.get(), error.get(), rounding.get(), MPFR_RNDU);
  return BoundedReal(centre, error);
}

std::vector<ConvergenceRow> convergence_report(int k, const std::vector<std::uint64_t>& xs) {
  check_k(k, 2, 4, "convergence_report");
  const BoundedReal c = leading_constants(k).c;
  const long long power = (1LL << k) - 1;
  std::vector<ConvergenceRow> rows;
  for (const std::uint64_t x : xs) {
    ConvergenceRow row;
    row.x = x;
    row.c = c;
    if (k == 2) {
      FastS2Result fast = fast_S2(x);
      row.exact = fast.exact;
      row.sum = fast.value;
    } else {
      row.exact = brute_S(k, x).value;
      row.sum = BoundedReal::from_rational(*row.exact);
    }
    if (x > 1) {
      const BoundedReal log_x = log_of(BoundedReal::from_rational(ExactRational(x)));
      row.normalized = row.sum / log_x.pow(power);
      row.ratio = *row.normalized / c;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace lcmsum::oracle
