#include "lcmsum/polytope.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace lcmsum;
using namespace lcmsum::polytope;

namespace {

// Direct enumeration of every point of [0, N]^dim.
BigInt count_by_enumeration(const HyperbolicPolytope& p, int n) {
  std::vector<int> point(static_cast<std::size_t>(p.dim), 0);
  std::uint64_t count = 0;
  while (true) {
    bool inside = true;
    for (const auto& constraint : p.constraints) {
      int sum = 0;
      for (const int j : constraint) sum += point[static_cast<std::size_t>(j)];
      inside = inside && sum <= n;
    }
    count += inside ? 1 : 0;
    std::size_t i = 0;
    while (i < point.size() && point[i] == n) point[i++] = 0;
    if (i == point.size()) break;
    ++point[i];
  }
  return count;
}

HyperbolicPolytope permuted(const HyperbolicPolytope& p, const std::vector<int>& perm) {
  std::vector<std::vector<int>> constraints;
  for (const auto& c : p.constraints) {
    std::vector<int> row;
    for (const int j : c) row.push_back(perm[static_cast<std::size_t>(j)]);
    std::sort(row.begin(), row.end());
    constraints.push_back(row);
  }
  return make_polytope(p.dim, constraints);
}

const std::string kReferenceListing =
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

}  // namespace

TEST_CASE("kind names round-trip") {
  for (const auto kind : {PolytopeKind::D, PolytopeKind::DStar, PolytopeKind::DStar2, PolytopeKind::DStar3,
                          PolytopeKind::T}) {
    CHECK(parse_kind(to_string(kind)) == kind);
  }
  CHECK_THROWS_AS(parse_kind("E"), DomainError);
}

TEST_CASE("polytope shapes") {
  CHECK(build_polytope(PolytopeKind::D, 3).dim == 7);
  CHECK(build_polytope(PolytopeKind::DStar, 3).dim == 6);
  CHECK(build_polytope(PolytopeKind::DStar2, 3).dim == 4);
  CHECK(build_polytope(PolytopeKind::DStar3, 3).dim == 3);
  CHECK(build_polytope(PolytopeKind::D, 4).dim == 15);
  CHECK(build_polytope(PolytopeKind::DStar3, 4).labels == std::vector<int>{3, 5, 6, 7, 9, 10, 11, 12, 13, 14});
  CHECK_THROWS_AS(build_polytope(PolytopeKind::D, 5), DomainError);
  CHECK_THROWS_AS(make_polytope(2, {{0}}), DomainError);
  CHECK_THROWS_AS(make_polytope(2, {{0, 2}}), DomainError);
  CHECK_THROWS_AS(make_polytope(17, {{0}}), DomainError);
}

TEST_CASE("D_2 dilate 1 has five points") {
  CHECK(lattice_count(build_polytope(PolytopeKind::D, 2), 1) == 5);
  CHECK(lattice_count(build_polytope(PolytopeKind::D, 2), 0) == 1);
}

TEST_CASE("lattice counts against direct enumeration") {
  const std::vector<std::pair<PolytopeKind, int>> cases{{PolytopeKind::D, 2},      {PolytopeKind::DStar, 3},
                                                        {PolytopeKind::D, 3},      {PolytopeKind::DStar2, 3},
                                                        {PolytopeKind::DStar3, 3}, {PolytopeKind::T, 2},
                                                        {PolytopeKind::T, 3}};
  for (const auto& [kind, k] : cases) {
    const auto p = build_polytope(kind, k);
    REQUIRE(p.dim <= 7);
    const auto counts = lattice_counts(p, 4);
    for (int n = 0; n <= 4; ++n) CHECK(counts[static_cast<std::size_t>(n)] == count_by_enumeration(p, n));
  }
}

TEST_CASE("lattice counts are invariant under coordinate permutations") {
  std::mt19937_64 rng(3);
  const auto p = build_polytope(PolytopeKind::D, 3);
  const auto base = lattice_counts(p, 12);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<int> perm(static_cast<std::size_t>(p.dim));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(lattice_counts(permuted(p, perm), 12) == base);
  }
}

TEST_CASE("simplex counts are binomials") {
  const auto p = build_polytope(PolytopeKind::T, 3);
  const auto counts = lattice_counts(p, 20);
  for (unsigned n = 0; n <= 20; ++n) CHECK(counts[n] == binomial(n + 7, 7));
}

TEST_CASE("exact volumes for k = 2, 3") {
  CHECK(ehrhart_volume(build_polytope(PolytopeKind::D, 2)) == ExactRational(1, 3));
  CHECK(ehrhart_volume(build_polytope(PolytopeKind::DStar, 3)) == ExactRational(11, 480));
  CHECK(ehrhart_volume(build_polytope(PolytopeKind::D, 3)) == ExactRational(11, 3360));
  CHECK(ehrhart_volume(build_polytope(PolytopeKind::DStar2, 3)) == ExactRational(1, 16));
  CHECK(ehrhart_volume(build_polytope(PolytopeKind::DStar3, 3)) == ExactRational(1, 4));
  for (int k = 2; k <= 4; ++k) {
    CHECK(ehrhart_volume(build_polytope(PolytopeKind::T, k)) == ExactRational(BigInt(1), factorial((1u << k) - 1)));
  }
}

TEST_CASE("period detection") {
  const auto detailed = ehrhart_volume_detailed(build_polytope(PolytopeKind::D, 3));
  CHECK(detailed.samples.period == 2);
  CHECK(detailed.samples.stabilized);
  EhrhartOptions only_one;
  only_one.period_candidates = {1};
  CHECK_THROWS_AS(ehrhart_volume(build_polytope(PolytopeKind::D, 3), only_one), ComputationError);
  CHECK(ehrhart_volume(build_polytope(PolytopeKind::D, 2), only_one) == ExactRational(1, 3));
}

TEST_CASE("state budget") {
  LatticeOptions tiny;
  tiny.state_budget = 100;
  CHECK_THROWS_AS(lattice_counts(build_polytope(PolytopeKind::D, 3), 20, tiny), ResourceError);
}

TEST_CASE("volume relations for k = 3") {
  const auto rel = volume_relations_check(3);
  CHECK(rel.star_relation);
  CHECK(rel.star2_relation);
  CHECK(rel.ok());
}

TEST_CASE("worksheet export") {
  const auto p = build_polytope(PolytopeKind::DStar, 3);
  CHECK(strip_whitespace(export_ieqs(p)) == strip_whitespace(kReferenceListing));
  const auto rows = ieqs_rows(build_polytope(PolytopeKind::D, 2));
  CHECK(rows == std::vector<std::vector<int>>{{1, -1, 0, -1}, {1, 0, -1, -1}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK(ieqs_matrix(build_polytope(PolytopeKind::T, 2)) == "[[1, -1, -1, -1], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]");
}
