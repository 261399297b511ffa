#include "lcmsum/verify.hpp"

#include "lcmsum/coprimality.hpp"
#include "lcmsum/eulerprod.hpp"
#include "lcmsum/exactmath.hpp"
#include "lcmsum/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

namespace lcmsum::verify {

namespace {

using polytope::PolytopeKind;
using lcmsum::to_string;

struct Outcome {
  bool pass = false;
  std::string expected;
  std::string actual;
  std::string tolerance = "exact";
};

struct Check {
  std::string name;
  bool heavy = false;
  std::function<Outcome()> run;
};

const std::string kListingDStar3 =
    "P=Polyhedron(ieqs=[[1, -1, 0, -1, 0, -1, 0],\n"
    "[1, 0, -1, -1, 0, 0, -1],\n"
    "[1, 0, 0, 0, -1, -1, -1],\n"
    "[0, 1, 0, 0, 0, 0, 0],\n"
    "[0, 0, 1, 0, 0, 0, 0],\n"
    "[0, 0, 0, 1, 0, 0, 0],\n"
    "[0, 0, 0, 0, 1, 0, 0],\n"
    "[0, 0, 0, 0, 0, 1, 0],\n"
    "[0, 0, 0, 0, 0, 0, 1]])\n"
    "P.volume()";

const std::string kListingDStar4 =
    "P=Polyhedron(ieqs=[\n"
    "[1, -1, 0, -1, 0, -1, 0, -1, 0, -1, 0, -1, 0, -1, 0],\n"
    "[1, 0, -1, -1, 0, 0, -1, -1, 0, 0, -1, -1, 0, 0, -1],\n"
    "[1, 0, 0, 0, -1, -1, -1, -1, 0, 0, 0, 0, -1, -1, -1],\n"
    "[1, 0, 0, 0, 0, 0, 0, 0, -1, -1, -1, -1, -1, -1, -1],\n"
    "[0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],\n"
    "[0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],\n"
    "[0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],\n"
    "[0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],\n"
    "[0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],\n"
    "[0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],\n"
    "[0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0],\n"
    "[0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0],\n"
    "[0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],\n"
    "[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0],\n"
    "[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0],\n"
    "[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0],\n"
    "[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0],\n"
    "[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]])\n"
    "P.volume()";

const std::string kListingDStar33 =
    "P=Polyhedron(ieqs=[[1, -1, -1, 0], [1, -1, 0, -1],\n"
    "[1, 0, -1, -1], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])\n"
    "P.volume()";

const std::string kListingDStar34 =
    "P=Polyhedron(ieqs=[\n"
    "[1, -1, -1, 0, -1, -1, 0, -1, 0, -1, 0],\n"
    "[1, -1, 0, -1, -1, 0, -1, -1, 0, 0, -1],\n"
    "[1, 0, -1, -1, -1, 0, 0, 0, -1, -1, -1],\n"
    "[1, 0, 0, 0, 0, -1, -1, -1, -1, -1, -1],\n"
    "[0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],\n"
    "[0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],\n"
    "[0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0],\n"
    "[0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0],\n"
    "[0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],\n"
    "[0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0],\n"
    "[0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0],\n"
    "[0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0],\n"
    "[0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0],\n"
    "[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]])\n"
    "P.volume()";

std::string join(const std::vector<std::uint64_t>& values, std::size_t count) {
  std::ostringstream out;
  for (std::size_t i = 0; i < std::min(count, values.size()); ++i) out << (i ? "," : "") << values[i];
  return out.str();
}

std::string short_text(const std::string& text) {
  return text.size() > 200 ? text.substr(0, 200) + "..." : text;
}

Outcome exact(const std::string& expected, const std::string& actual) {
  return {expected == actual, expected, actual, "exact"};
}

// 6 / pi^2 with every rounding charged.
BoundedReal six_over_pi_squared(mpfr_prec_t prec = kDefaultPrecisionBits) {
  Real pi(prec);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  const BoundedReal pi_bounded(pi, rounding_bound(pi));
  return BoundedReal::from_rational(ExactRational(6), prec) / (pi_bounded * pi_bounded);
}

// Every point of `value` lies within `tolerance` of every point of `reference`.
bool within(const BoundedReal& value, const BoundedReal& reference, double tolerance) {
  const BoundedReal diff = value - reference;
  Real bound(diff.precision());
  mpfr_abs(bound.get(), diff.value().get(), MPFR_RNDU);
  mpfr_add(bound.get(), bound.get(), diff.abs_error().get(), MPFR_RNDU);
  return mpfr_cmp_d(bound.get(), tolerance) <= 0;
}

Outcome near(const BoundedReal& value, const BoundedReal& reference, double tolerance) {
  std::ostringstream tol;
  tol << tolerance;
  return {within(value, reference, tolerance), reference.to_string(12), value.to_string(12), tol.str()};
}

Outcome volume_check(PolytopeKind kind, int k, const std::string& expected) {
  const ExactRational vol = polytope::cached_volume(kind, k);
  return exact(expected, to_string(vol));
}

// Tuples of divisors of n with lcm exactly n.
std::uint64_t lcm_count_brute(int k, std::uint64_t n) {
  std::vector<std::uint64_t> divisors;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d == 0) divisors.push_back(d);
  }
  std::uint64_t count = 0;
  auto walk = [&](auto&& self, int depth, std::uint64_t lcm) -> void {
    if (depth == k) {
      count += lcm == n ? 1 : 0;
      return;
    }
    for (const std::uint64_t d : divisors) self(self, depth + 1, std::lcm(lcm, d));
  };
  walk(walk, 0, 1);
  return count;
}

coprimality::GenericGraph random_graph(std::mt19937_64& rng) {
  const int v = std::uniform_int_distribution<int>(1, 8)(rng);
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= v; ++i) {
    for (int j = i + 1; j <= v; ++j) {
      if (std::bernoulli_distribution(0.4)(rng)) edges.emplace_back(i, j);
    }
  }
  return coprimality::GenericGraph(v, edges);
}

std::vector<Check> build_checks() {
  std::vector<Check> checks;
  auto add = [&](std::string name, bool heavy, std::function<Outcome()> run) {
    checks.push_back({std::move(name), heavy, std::move(run)});
  };

  for (int k = 2; k <= 4; ++k) {
    add("graph.edge_count.k" + std::to_string(k), false, [k] {
      const auto g = coprimality::build_coprimality_graph(k);
      return exact(std::to_string(coprimality::edge_count_formula(k)), std::to_string(g.graph.edge_count()));
    });
  }
  for (int k = 2; k <= 4; ++k) {
    add("graph.ism_stirling.k" + std::to_string(k), false, [k] {
      const auto g = coprimality::build_coprimality_graph(k);
      const auto counts = coprimality::independent_set_counts(g.graph).counts;
      const auto stirling = coprimality::stirling_ism_counts(k).counts;
      return exact(join(stirling, stirling.size()), join(counts, counts.size()));
    });
  }
  add("graph.ism_values.k3", false, [] {
    const auto g = coprimality::build_coprimality_graph(3);
    return exact("1,7,12,6", join(coprimality::independent_set_counts(g.graph).counts, 4));
  });

  const std::map<int, std::string> listings{
      {2, "1 - x^2"},
      {3, "1 - 9x^2 + 16x^3 - 9x^4 + x^6"},
      {4, "1 - 55x^2 + 320x^3 - 891x^4 + 1408x^5 - 1155x^6 + 1155x^8 - 1408x^9 + 891x^10 - 320x^11 + 55x^12 - "
          "x^14"}};
  for (const auto& [k, text] : listings) {
    add("qpoly.listing.k" + std::to_string(k), false, [k = k, text = text] {
      const auto g = coprimality::build_coprimality_graph(k);
      return exact(text, coprimality::q_polynomial(g.graph).to_string());
    });
  }
  for (int k = 2; k <= 4; ++k) {
    add("qpoly.routes.k" + std::to_string(k), false, [k] {
      const auto g = coprimality::build_coprimality_graph(k);
      const auto q = coprimality::q_polynomial(g.graph);
      const auto stirling = coprimality::q_polynomial_from_counts(coprimality::stirling_ism_counts(k));
      bool ok = q == stirling;
      std::string routes = "independent-set=Stirling";
      if (g.graph.edge_count() <= coprimality::kMaxEnumerationEdges) {
        ok = ok && q == coprimality::q_polynomial_by_edge_subsets(g.graph);
        routes += "=edge-subset";
      }
      return Outcome{ok, routes, q.to_string(), "exact"};
    });
  }
  add("qpoly.random_graphs", false, [] {
    std::mt19937_64 rng(20240601);
    int agree = 0;
    constexpr int kGraphs = 200;
    for (int i = 0; i < kGraphs; ++i) {
      const auto g = random_graph(rng);
      if (coprimality::q_polynomial(g) == coprimality::q_polynomial_by_edge_subsets(g)) ++agree;
    }
    return exact(std::to_string(kGraphs), std::to_string(agree));
  });
  for (int k = 2; k <= 4; ++k) {
    add("series.identity.k" + std::to_string(k), false, [k] {
      const auto result = eulerprod::series_identity_check(k, 30);
      return Outcome{result.ok, "ok", result.detail, "exact"};
    });
  }

  struct VolumeCase {
    PolytopeKind kind;
    int k;
    const char* value;
    bool heavy;
  };
  const std::vector<VolumeCase> volumes{
      {PolytopeKind::D, 2, "1/3", false},
      {PolytopeKind::DStar, 3, "11/480", false},
      {PolytopeKind::D, 3, "11/3360", false},
      {PolytopeKind::DStar2, 3, "1/16", false},
      {PolytopeKind::DStar3, 3, "1/4", false},
      {PolytopeKind::T, 2, "1/6", false},
      {PolytopeKind::T, 3, "1/5040", false},
      {PolytopeKind::T, 4, "1/1307674368000", false},
      {PolytopeKind::DStar3, 4, "299/43545600", true},
      {PolytopeKind::DStar2, 4, "299/479001600", true},
      {PolytopeKind::DStar, 4, "739/25830604800", true},
      {PolytopeKind::D, 4, "739/387459072000", true},
  };
  for (const auto& vc : volumes) {
    add("volume." + polytope::to_string(vc.kind) + ".k" + std::to_string(vc.k), vc.heavy,
        [vc] { return volume_check(vc.kind, vc.k, vc.value); });
  }
  for (int k = 3; k <= 4; ++k) {
    add("volume.relations.k" + std::to_string(k), k == 4, [k] {
      const auto rel = polytope::volume_relations_check(k);
      return Outcome{rel.ok(), "vol(D)=vol(D*)/(2^k-1), vol(D**)=vol(D***)/(2^k-k-1)",
                     to_string(rel.vol_d) + " " + to_string(rel.vol_d_star) + " " + to_string(rel.vol_d_star2) + " " +
                         to_string(rel.vol_d_star3),
                     "exact"};
    });
  }
  for (const PolytopeKind kind : {PolytopeKind::DStar, PolytopeKind::DStar3}) {
    for (int k = 3; k <= 4; ++k) {
      add("export." + polytope::to_string(kind) + ".k" + std::to_string(k), false, [kind, k] {
        const std::string ours = polytope::export_ieqs(polytope::build_polytope(kind, k));
        const std::string& ref = reference_listing(kind, k);
        return Outcome{polytope::strip_whitespace(ours) == polytope::strip_whitespace(ref), short_text(ref),
                       short_text(ours), "whitespace-insensitive"};
      });
    }
  }

  add("rho.G2", false, [] { return near(oracle::rho_of_graph(2), six_over_pi_squared(), 1e-10); });
  add("rho.G3", false, [] {
    const BoundedReal rho = oracle::rho_of_graph(3);
    Outcome out = near(rho, BoundedReal::from_rational(parse_rational("4932167/100000000")), 5e-8);
    out.pass = out.pass && rho.error_double() <= 5e-9;
    out.tolerance = "5e-08 (certified error <= 5e-09)";
    return out;
  });
  for (int k = 2; k <= 4; ++k) {
    add("rho.c_k_expression.k" + std::to_string(k), false, [k] {
      const BoundedReal rho = oracle::rho_of_graph(k);
      const BoundedReal ck = eulerprod::c_k_expression(k, oracle::kConstantsTarget).value;
      return Outcome{rho.overlaps(ck), rho.to_string(16), ck.to_string(16), "combined error bounds"};
    });
  }
  add("rho.decreasing", false, [] {
    const auto r2 = oracle::rho_of_graph(2), r3 = oracle::rho_of_graph(3), r4 = oracle::rho_of_graph(4);
    return Outcome{r3.certainly_less(r2) && r4.certainly_less(r3), "rho(G2) > rho(G3) > rho(G4)",
                   r2.to_string(8) + " > " + r3.to_string(8) + " > " + r4.to_string(8), "certified"};
  });

  for (int k = 2; k <= 3; ++k) {
    const std::uint64_t limit = k == 2 ? 200 : 30;
    for (const bool unit_gcd : {false, true}) {
      add(std::string("decomposition.") + (unit_gcd ? "U" : "S") + ".k" + std::to_string(k), false, [=] {
        for (std::uint64_t x = 1; x <= limit; ++x) {
          const ExactRational lhs = oracle::gwise_constrained_sum(k, x, unit_gcd).value;
          const ExactRational rhs = (unit_gcd ? oracle::brute_U(k, x) : oracle::brute_S(k, x)).value;
          if (lhs != rhs) return Outcome{false, to_string(rhs), to_string(lhs) + " at x=" + std::to_string(x), "exact"};
        }
        return Outcome{true, "equal for x<=" + std::to_string(limit), "equal", "exact"};
      });
    }
  }
  for (int k = 2; k <= 3; ++k) {
    add("alpha.lcm_count.k" + std::to_string(k), false, [k] {
      for (std::uint64_t n = 1; n <= 200; ++n) {
        const std::uint64_t brute = lcm_count_brute(k, n);
        const BigInt formula = oracle::alpha_k(k, n);
        if (formula != brute) {
          return Outcome{false, std::to_string(brute), formula.str() + " at n=" + std::to_string(n), "exact"};
        }
      }
      return Outcome{true, "equal for n<=200", "equal", "exact"};
    });
  }
  add("ordering.U_alpha_below_S", false, [] {
    for (int k = 2; k <= 3; ++k) {
      for (std::uint64_t x = 1; x <= (k == 2 ? 60u : 20u); ++x) {
        const ExactRational s = oracle::brute_S(k, x).value;
        if (oracle::brute_U(k, x).value > s || oracle::alpha_sum(k, x).value > s) {
          return Outcome{false, "U <= S and alpha_sum <= S", "violated at k=" + std::to_string(k) + " x=" + std::to_string(x),
                         "exact"};
        }
      }
    }
    return Outcome{true, "U <= S and alpha_sum <= S", "holds", "exact"};
  });
  add("fast_s2.exact", false, [] {
    const auto brute = oracle::brute_S2_prefix(1000);
    for (std::uint64_t x = 1; x <= 1000; ++x) {
      const auto fast = oracle::fast_S2(x);
      if (!fast.exact || *fast.exact != brute[x - 1]) {
        return Outcome{false, to_string(brute[x - 1]), "mismatch at x=" + std::to_string(x), "exact"};
      }
    }
    return Outcome{true, "equal for x<=1000", "equal", "exact"};
  });

  add("constants.c3", false, [] {
    return near(oracle::leading_constants(3).c, BoundedReal::from_rational(parse_rational("16147/100000000")), 5e-8);
  });
  add("constants.c2", false, [] {
    const BoundedReal two_over_pi2 = six_over_pi_squared() * ExactRational(1, 3);
    return near(oracle::leading_constants(2).c, two_over_pi2, 1e-10);
  });
  for (int k = 2; k <= 4; ++k) {
    add("constants.c2_ratio.k" + std::to_string(k), k == 4, [k] {
      const auto lc = oracle::leading_constants(k);
      return Outcome{lc.c2_consistent, std::to_string((1 << k) - 1), to_string(lc.vol_d_star / lc.vol_d), "exact"};
    });
  }
  add("constants.decreasing", true, [] {
    const auto c2 = oracle::leading_constants(2).c, c3 = oracle::leading_constants(3).c,
               c4 = oracle::leading_constants(4).c;
    return Outcome{c3.certainly_less(c2) && c4.certainly_less(c3), "c2 > c3 > c4",
                   c2.to_string(6) + " > " + c3.to_string(6) + " > " + c4.to_string(6), "certified"};
  });
  add("constants.theta.k3", false, [] {
    const auto theta = oracle::theta_exponents(3);
    return exact("1/14 3/40 1/14",
                 theta.theta1.to_string() + " " + theta.theta2.to_string() + " " + theta.theta3.to_string());
  });
  add("constants.hadamard.k3", false, [] {
    const auto h = eulerprod::hadamard_constants(3);
    const double c_ref = 4.0 / std::pow(3.0, 1.5);
    const bool ok = std::abs(h.C_bound - 2.0) < 1e-12 && std::abs(h.c_bound - c_ref) < 1e-12;
    std::ostringstream actual;
    actual.precision(12);
    actual << h.C_bound << " " << h.c_bound;
    return Outcome{ok, "2 0.769800358920", actual.str(), "1e-12"};
  });
  return checks;
}

const std::vector<Check>& all_checks() {
  static const std::vector<Check> checks = build_checks();
  return checks;
}

std::vector<const Check*> select(const std::string& suite) {
  if (suite != "all" && suite != "quick") throw DomainError("unknown suite '" + suite + "'");
  std::vector<const Check*> out;
  for (const auto& check : all_checks()) {
    if (suite == "all" || !check.heavy) out.push_back(&check);
  }
  return out;
}

CheckRow run_one(const Check& check) {
  CheckRow row;
  row.check_name = check.name;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Outcome outcome = check.run();
    row.status = outcome.pass ? Status::Pass : Status::Fail;
    row.expected = outcome.expected;
    row.actual = outcome.actual;
    row.tolerance = outcome.tolerance;
  } catch (const ResourceError& e) {
    row.status = Status::Resource;
    row.actual = e.what();
  } catch (const std::exception& e) {
    row.status = Status::Error;
    row.actual = e.what();
  }
  row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

}  // namespace

std::string to_string(Status status) {
  switch (status) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Error: return "error";
    case Status::Resource: return "resource";
  }
  return "?";
}

std::vector<std::string> suite_names() { return {"quick", "all"}; }

std::vector<std::string> check_names(const std::string& suite) {
  std::vector<std::string> out;
  for (const Check* check : select(suite)) out.push_back(check->name);
  return out;
}

std::vector<CheckRow> run_suite(const std::string& suite, unsigned threads) {
  const auto checks = select(suite);
  std::vector<CheckRow> rows(checks.size());
  const unsigned workers =
      std::max(1u, std::min<unsigned>(threads ? threads : oracle::configured_threads(), static_cast<unsigned>(checks.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < checks.size(); i = next++) rows[i] = run_one(*checks[i]);
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return rows;
}

int exit_status(const std::vector<CheckRow>& rows) {
  bool resource = false;
  bool failed = false;
  for (const auto& row : rows) {
    resource = resource || row.status == Status::Resource;
    failed = failed || row.status != Status::Pass;
  }
  if (resource) return 3;
  return failed ? 1 : 0;
}

const std::string& reference_listing(PolytopeKind kind, int k) {
  if (kind == PolytopeKind::DStar && k == 3) return kListingDStar3;
  if (kind == PolytopeKind::DStar && k == 4) return kListingDStar4;
  if (kind == PolytopeKind::DStar3 && k == 3) return kListingDStar33;
  if (kind == PolytopeKind::DStar3 && k == 4) return kListingDStar34;
  throw DomainError("reference_listing: only D_star and D_star3 with k = 3, 4");
}

}  // namespace lcmsum::verify
