#include "lcmsum/coprimality.hpp"
#include "lcmsum/exactmath.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace lcmsum;
using namespace lcmsum::coprimality;

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

// Two labels are joined iff neither bit set contains the other.
EdgeList incomparable_pairs(int k) {
  EdgeList edges;
  const int v = (1 << k) - 1;
  for (int i = 1; i <= v; ++i) {
    for (int j = i + 1; j <= v; ++j) {
      if ((i & j) != i && (i & j) != j) edges.emplace_back(i, j);
    }
  }
  return edges;
}

std::vector<std::uint64_t> independent_sets_by_subsets(const GenericGraph& g) {
  const int v = g.vertex_count();
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(v) + 1, 0);
  for (std::uint32_t mask = 0; mask < (1u << v); ++mask) {
    bool independent = true;
    for (const auto& [i, j] : g.edges()) {
      if ((mask >> (i - 1) & 1) && (mask >> (j - 1) & 1)) independent = false;
    }
    if (independent) ++counts[static_cast<std::size_t>(__builtin_popcount(mask))];
  }
  return counts;
}

GenericGraph random_graph(std::mt19937_64& rng, int max_v) {
  const int v = std::uniform_int_distribution<int>(1, max_v)(rng);
  EdgeList edges;
  for (int i = 1; i <= v; ++i) {
    for (int j = i + 1; j <= v; ++j) {
      if (std::bernoulli_distribution(0.35)(rng)) edges.emplace_back(i, j);
    }
  }
  return GenericGraph(v, edges);
}

std::uint64_t gcd_all(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

}  // namespace

TEST_CASE("G_2 and G_3 edge lists") {
  CHECK(build_coprimality_graph(2).graph.edges() == EdgeList{{1, 2}});
  const EdgeList g3{{1, 2}, {1, 4}, {1, 6}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {3, 6}, {5, 6}};
  CHECK(build_coprimality_graph(3).graph.edges() == g3);
}

TEST_CASE("inductive construction equals the incomparability graph") {
  for (int k = 2; k <= 5; ++k) {
    const auto g = build_coprimality_graph(k);
    CHECK(g.graph.edges() == incomparable_pairs(k));
    CHECK(static_cast<std::int64_t>(g.graph.edge_count()) == edge_count_formula(k));
  }
  CHECK(edge_count_formula(2) == 1);
  CHECK(edge_count_formula(3) == 9);
  CHECK(edge_count_formula(4) == 55);
}

TEST_CASE("constraint sets hold the labels with the matching bit") {
  const auto g = build_coprimality_graph(3);
  REQUIRE(g.constraints.size() == 3);
  CHECK(g.constraints[0] == std::vector<int>{1, 3, 5, 7});
  CHECK(g.constraints[1] == std::vector<int>{2, 3, 6, 7});
  CHECK(g.constraints[2] == std::vector<int>{4, 5, 6, 7});
  CHECK_THROWS_AS(build_coprimality_graph(1), DomainError);
  CHECK_THROWS_AS(build_coprimality_graph(6), DomainError);
}

TEST_CASE("letter labels for k = 3") {
  CHECK(letter_to_label('a') == 1);
  CHECK(letter_to_label('d') == 7);
  CHECK(letter_to_label('e') == 6);
  CHECK(letter_to_label('f') == 3);
  CHECK(letter_to_label('g') == 5);
  CHECK_THROWS_AS(letter_to_label('h'), DomainError);
  // a-e is an edge, d is isolated
  const auto g = build_coprimality_graph(3).graph;
  CHECK(g.has_edge(letter_to_label('a'), letter_to_label('e')));
  CHECK(g.adjacency(letter_to_label('d')) == 0);
}

TEST_CASE("independent set counts against subset enumeration") {
  for (int k = 2; k <= 4; ++k) {
    const auto g = build_coprimality_graph(k);
    const auto counts = independent_set_counts(g.graph).counts;
    CHECK(counts == independent_sets_by_subsets(g.graph));
    auto stirling = stirling_ism_counts(k).counts;
    CHECK(counts == stirling);
  }
  const auto g3 = independent_set_counts(build_coprimality_graph(3).graph).counts;
  CHECK(std::vector<std::uint64_t>(g3.begin(), g3.begin() + 4) == std::vector<std::uint64_t>{1, 7, 12, 6});
}

TEST_CASE("Q polynomial listings") {
  CHECK(q_polynomial(build_coprimality_graph(2).graph).to_string() == "1 - x^2");
  CHECK(q_polynomial(build_coprimality_graph(3).graph).coefficients ==
        std::vector<std::int64_t>{1, 0, -9, 16, -9, 0, 1, 0});
  CHECK(q_polynomial(build_coprimality_graph(4).graph).coefficients ==
        std::vector<std::int64_t>{1, 0, -55, 320, -891, 1408, -1155, 0, 1155, -1408, 891, -320, 55, 0, -1, 0});
}

TEST_CASE("Q polynomial: both routes agree on random graphs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = random_graph(rng, 9);
    const auto q = q_polynomial(g);
    CHECK(q == q_polynomial_by_edge_subsets(g));
    CHECK(q.coefficient(0) == 1);
    CHECK(q.coefficient(1) == 0);
    CHECK(q.evaluate(ExactRational(0)) == 1);
  }
}

TEST_CASE("Q polynomial of an edgeless graph is 1") {
  const GenericGraph empty(5, {});
  CHECK(q_polynomial(empty).to_string() == "1");
  CHECK(q_polynomial_by_edge_subsets(empty).to_string() == "1");
}

TEST_CASE("enumeration budgets") {
  CHECK_THROWS_AS(q_polynomial_by_edge_subsets(build_coprimality_graph(4).graph), ResourceError);
  CHECK_THROWS_AS(independent_set_counts(build_coprimality_graph(5).graph), ResourceError);
}

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(GenericGraph(3, {{1, 1}}), DomainError);
  CHECK_THROWS_AS(GenericGraph(3, {{1, 2}, {2, 1}}), DomainError);
  CHECK_THROWS_AS(GenericGraph(3, {{1, 4}}), DomainError);
  const GenericGraph g(3, {{3, 1}});
  CHECK(g.edges() == EdgeList{{1, 3}});
}

TEST_CASE("tuple decomposition") {
  const std::vector<std::uint64_t> n{2, 3, 5};
  const auto a = decompose_tuple(3, n);
  CHECK(a == std::vector<std::uint64_t>{2, 3, 1, 5, 1, 1, 1});

  // products over constraint sets rebuild the tuple, the product of all
  // parts is the lcm, and the parts are G_k-wise coprime
  std::mt19937_64 rng(11);
  for (int k = 2; k <= 4; ++k) {
    const auto g = build_coprimality_graph(k);
    for (int trial = 0; trial < 400; ++trial) {
      std::vector<std::uint64_t> tuple(static_cast<std::size_t>(k));
      for (auto& value : tuple) value = std::uniform_int_distribution<std::uint64_t>(1, 720)(rng);
      const auto parts = decompose_tuple(k, tuple);
      for (int i = 0; i < k; ++i) {
        std::uint64_t product = 1;
        for (const int j : g.constraints[static_cast<std::size_t>(i)]) product *= parts[static_cast<std::size_t>(j - 1)];
        CHECK(product == tuple[static_cast<std::size_t>(i)]);
      }
      std::uint64_t lcm = 1;
      for (const auto value : tuple) lcm = lcm / gcd_all(lcm, value) * value;
      std::uint64_t all = 1;
      for (const auto value : parts) all *= value;
      CHECK(all == lcm);
      CHECK(is_gwise_coprime(g.graph, parts));
    }
  }
  CHECK_THROWS_AS(decompose_tuple(3, std::vector<std::uint64_t>{1, 2}), DomainError);
  CHECK_THROWS_AS(is_gwise_coprime(build_coprimality_graph(2).graph, std::vector<std::uint64_t>{1}), DomainError);
}

TEST_CASE("dump format") {
  CHECK(dump(build_coprimality_graph(2)) == "k=2\nv=3\nedges=1-2\nA_1=1,3\nA_2=2,3\n");
  const std::string d3 = dump(build_coprimality_graph(3));
  CHECK(d3.rfind("k=3\nv=7\nedges=1-2,1-4,1-6,2-4,2-5,3-4,3-5,3-6,5-6\n", 0) == 0);
}
