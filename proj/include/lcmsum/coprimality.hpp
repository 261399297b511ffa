#pragma once

// Coprimality graphs G_k, their constraint families A_{k,i}, the polynomial
// Q_G by two independent routes, and the canonical decomposition of a
// k-tuple into a G_k-wise coprime (2^k - 1)-tuple.

#include "lcmsum/errors.hpp"
#include "lcmsum/rational.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lcmsum::coprimality {

inline constexpr int kMaxVertices = 31;

// Simple undirected graph on vertices 1..v stored as adjacency bitmasks
// (bit j-1 of adjacency(i) set iff (i, j) is an edge).
class GenericGraph {
 public:
  GenericGraph() = default;
  // Edges are normalized to i < j and sorted; loops and duplicates throw.
  GenericGraph(int vertex_count, std::vector<std::pair<int, int>> edges);

  int vertex_count() const noexcept { return v_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }
  std::uint32_t adjacency(int vertex) const { return adjacency_.at(static_cast<std::size_t>(vertex - 1)); }
  bool has_edge(int i, int j) const;

  friend bool operator==(const GenericGraph&, const GenericGraph&) = default;

 private:
  int v_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::uint32_t> adjacency_;
};

// G_k on labels 1..2^k-1; label j has bit i-1 set iff j is in A_{k,i}.
struct CoprimalityGraph {
  int k = 0;
  GenericGraph graph;
  std::vector<std::vector<int>> constraints;  // constraints[i-1] = A_{k,i}, ascending

  int vertex_count() const noexcept { return graph.vertex_count(); }
};

// G_2 = ({1,2,3}, {(1,2)}), then the inductive extension E'_k u E'_{k+1}.
// 2 <= k <= 5.
CoprimalityGraph build_coprimality_graph(int k);

// 2^(k-1) (2^k + 1) - 3^k.
std::int64_t edge_count_formula(int k);

// Letter labels a..g used for k = 3 mapped to bit-pattern labels:
// a=001, b=010, c=100, d=111, e=110 (n_2, n_3), f=011 (n_1, n_2), g=101 (n_1, n_3).
inline constexpr std::array<std::pair<char, int>, 7> kLetterLabelsK3{
    {{'a', 1}, {'b', 2}, {'c', 4}, {'d', 7}, {'e', 6}, {'f', 3}, {'g', 5}}};
int letter_to_label(char letter);

// i_0..i_v.
struct IndependentSetCounts {
  std::vector<std::uint64_t> counts;
  friend bool operator==(const IndependentSetCounts&, const IndependentSetCounts&) = default;
};

// Integer polynomial c_0 + c_1 x + ... + c_v x^v (length v + 1).
struct QPolynomial {
  std::vector<std::int64_t> coefficients;

  int degree() const;
  std::int64_t coefficient(std::size_t a) const { return a < coefficients.size() ? coefficients[a] : 0; }
  ExactRational evaluate(const ExactRational& x) const;
  // "1 - 9x^2 + 16x^3 - 9x^4 + x^6"
  std::string to_string() const;
  friend bool operator==(const QPolynomial&, const QPolynomial&) = default;
};

inline constexpr int kMaxEnumerationVertices = 24;
inline constexpr std::size_t kMaxEnumerationEdges = 22;

// Branching enumeration of independent sets; v <= 24.
IndependentSetCounts independent_set_counts(const GenericGraph& g);

// sum_m i_m (1 - x)^(v-m) x^m (production route).
QPolynomial q_polynomial(const GenericGraph& g);
QPolynomial q_polynomial_from_counts(const IndependentSetCounts& counts);

// sum over F subset of E of (-1)^|F| x^{v(F)}; |E| <= 22 (verification route).
QPolynomial q_polynomial_by_edge_subsets(const GenericGraph& g);

// i_m(G_k) = S(k,m) m! + S(k,m+1) (m+1)!, padded with zeros to length 2^k.
IndependentSetCounts stirling_ism_counts(int k);

// a_j with nu_p(a_j) = max(0, min_{i in j} nu_p(n_i) - max_{i not in j} nu_p(n_i)).
// Returns 2^k - 1 entries, index j-1 holding a_j.
std::vector<std::uint64_t> decompose_tuple(int k, std::span<const std::uint64_t> n);

bool is_gwise_coprime(const GenericGraph& g, std::span<const std::uint64_t> a);

// Line-oriented dump: k=, v=, edges=i-j,... then A_i=... lines.
std::string dump(const CoprimalityGraph& g);

}  // namespace lcmsum::coprimality
