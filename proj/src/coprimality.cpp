#include "lcmsum/coprimality.hpp"

#include "lcmsum/exactmath.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace lcmsum::coprimality {

GenericGraph::GenericGraph(int vertex_count, std::vector<std::pair<int, int>> edges) : v_(vertex_count) {
  if (vertex_count < 0 || vertex_count > kMaxVertices) {
    throw DomainError("GenericGraph: vertex count must be in 0.." + std::to_string(kMaxVertices));
  }
  adjacency_.assign(static_cast<std::size_t>(vertex_count), 0);
  for (auto& [i, j] : edges) {
    if (i > j) std::swap(i, j);
    if (i == j) throw DomainError("GenericGraph: loop at vertex " + std::to_string(i));
    if (i < 1 || j > vertex_count) throw DomainError("GenericGraph: edge endpoint out of range");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw DomainError("GenericGraph: duplicate edge");
  }
  for (const auto& [i, j] : edges) {
    adjacency_[static_cast<std::size_t>(i - 1)] |= 1u << (j - 1);
    adjacency_[static_cast<std::size_t>(j - 1)] |= 1u << (i - 1);
  }
  edges_ = std::move(edges);
}

bool GenericGraph::has_edge(int i, int j) const {
  if (i < 1 || j < 1 || i > v_ || j > v_) return false;
  return (adjacency(i) >> (j - 1)) & 1u;
}

CoprimalityGraph build_coprimality_graph(int k) {
  if (k < 2 || k > 5) throw DomainError("build_coprimality_graph: k must be in 2..5");
  std::set<std::pair<int, int>> edges{{1, 2}};
  for (int level = 2; level < k; ++level) {
    const int shift = 1 << level;  // 2^level, the new singleton label
    const int next_v = (shift << 1) - 1;
    std::set<std::pair<int, int>> next;
    // E'_k: each old edge (j, l) becomes {2^k + j, j} x {2^k + l, l}
    for (const auto& [j, l] : edges) {
      for (const int a : {j, shift + j}) {
        for (const int b : {l, shift + l}) next.emplace(std::min(a, b), std::max(a, b));
      }
    }
    // E'_{k+1}: for each old bit i, (top bit clear, bit i set) x (top bit set, bit i clear)
    for (int bit = 0; bit < level; ++bit) {
      for (int a = 1; a <= next_v; ++a) {
        if ((a & shift) || !((a >> bit) & 1)) continue;
        for (int b = 1; b <= next_v; ++b) {
          if (!(b & shift) || ((b >> bit) & 1)) continue;
          next.emplace(std::min(a, b), std::max(a, b));
        }
      }
    }
    edges = std::move(next);
  }
  CoprimalityGraph out;
  out.k = k;
  const int v = (1 << k) - 1;
  out.graph = GenericGraph(v, {edges.begin(), edges.end()});
  out.constraints.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    for (int j = 1; j <= v; ++j) {
      if ((j >> i) & 1) out.constraints[static_cast<std::size_t>(i)].push_back(j);
    }
  }
  return out;
}

std::int64_t edge_count_formula(int k) {
  if (k < 2 || k > 30) throw DomainError("edge_count_formula: k must be in 2..30");
  std::int64_t three_k = 1;
  for (int i = 0; i < k; ++i) three_k *= 3;
  return (std::int64_t{1} << (k - 1)) * ((std::int64_t{1} << k) + 1) - three_k;
}

int letter_to_label(char letter) {
  for (const auto& [l, label] : kLetterLabelsK3) {
    if (l == letter) return label;
  }
  throw DomainError(std::string("letter_to_label: unknown letter '") + letter + "'");
}

int QPolynomial::degree() const {
  for (int a = static_cast<int>(coefficients.size()) - 1; a >= 0; --a) {
    if (coefficients[static_cast<std::size_t>(a)] != 0) return a;
  }
  return -1;
}

ExactRational QPolynomial::evaluate(const ExactRational& x) const {
  ExactRational acc = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + ExactRational(*it);
  return acc;
}

std::string QPolynomial::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t a = 0; a < coefficients.size(); ++a) {
    const std::int64_t c = coefficients[a];
    if (c == 0) continue;
    const std::int64_t magnitude = c < 0 ? -c : c;
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (magnitude != 1 || a == 0) out << magnitude;
    if (a >= 1) out << 'x';
    if (a >= 2) out << '^' << a;
    first = false;
  }
  if (first) out << '0';
  return out.str();
}

IndependentSetCounts independent_set_counts(const GenericGraph& g) {
  const int v = g.vertex_count();
  if (v > kMaxEnumerationVertices) {
    throw ResourceError("independent_set_counts: " + std::to_string(v) + " vertices exceeds limit " +
                        std::to_string(kMaxEnumerationVertices));
  }
  IndependentSetCounts out;
  out.counts.assign(static_cast<std::size_t>(v) + 1, 0);
  // Each call either drops the lowest candidate or takes it and removes its
  // neighbourhood; leaves are exactly the independent sets.
  std::function<void(std::uint32_t, int)> walk = [&](std::uint32_t candidates, int size) {
    if (candidates == 0) {
      ++out.counts[static_cast<std::size_t>(size)];
      return;
    }
    const int u = std::countr_zero(candidates);
    const std::uint32_t without = candidates & ~(1u << u);
    walk(without, size);
    walk(without & ~g.adjacency(u + 1), size + 1);
  };
  const std::uint32_t all = v == 32 ? ~0u : ((1u << v) - 1u);
  walk(all, 0);
  return out;
}

QPolynomial q_polynomial_from_counts(const IndependentSetCounts& counts) {
  const int v = static_cast<int>(counts.counts.size()) - 1;
  QPolynomial q;
  q.coefficients.assign(static_cast<std::size_t>(v) + 1, 0);
  for (int m = 0; m <= v; ++m) {
    const std::int64_t i_m = static_cast<std::int64_t>(counts.counts[static_cast<std::size_t>(m)]);
    if (i_m == 0) continue;
    // (1 - x)^(v-m) x^m
    std::int64_t binom = 1;
    for (int r = 0; r <= v - m; ++r) {
      const std::int64_t signed_binom = (r % 2 == 0) ? binom : -binom;
      q.coefficients[static_cast<std::size_t>(m + r)] += i_m * signed_binom;
      binom = binom * (v - m - r) / (r + 1);
    }
  }
  return q;
}

QPolynomial q_polynomial(const GenericGraph& g) { return q_polynomial_from_counts(independent_set_counts(g)); }

QPolynomial q_polynomial_by_edge_subsets(const GenericGraph& g) {
  const std::size_t e = g.edge_count();
  if (e > kMaxEnumerationEdges) {
    throw ResourceError("q_polynomial_by_edge_subsets: " + std::to_string(e) + " edges exceeds limit " +
                        std::to_string(kMaxEnumerationEdges) + "; use q_polynomial");
  }
  std::vector<std::uint32_t> endpoint_masks;
  for (const auto& [i, j] : g.edges()) endpoint_masks.push_back((1u << (i - 1)) | (1u << (j - 1)));
  QPolynomial q;
  q.coefficients.assign(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
  const std::uint64_t subsets = std::uint64_t{1} << e;
  for (std::uint64_t f = 0; f < subsets; ++f) {
    std::uint32_t touched = 0;
    for (std::uint64_t rest = f; rest != 0; rest &= rest - 1) {
      touched |= endpoint_masks[static_cast<std::size_t>(std::countr_zero(rest))];
    }
    const int sign = (std::popcount(f) % 2 == 0) ? 1 : -1;
    q.coefficients[static_cast<std::size_t>(std::popcount(touched))] += sign;
  }
  return q;
}

IndependentSetCounts stirling_ism_counts(int k) {
  if (k < 2 || k > 5) throw DomainError("stirling_ism_counts: k must be in 2..5");
  const int v = (1 << k) - 1;
  IndependentSetCounts out;
  out.counts.assign(static_cast<std::size_t>(v) + 1, 0);
  const auto uk = static_cast<unsigned>(k);
  for (unsigned m = 0; m <= uk; ++m) {
    BigInt value = exactmath::stirling2(uk, m) * factorial(m) + exactmath::stirling2(uk, m + 1) * factorial(m + 1);
    out.counts[m] = value.convert_to<std::uint64_t>();
  }
  return out;
}

std::vector<std::uint64_t> decompose_tuple(int k, std::span<const std::uint64_t> n) {
  if (k < 1 || k > 5) throw DomainError("decompose_tuple: k must be in 1..5");
  if (n.size() != static_cast<std::size_t>(k)) throw DomainError("decompose_tuple: expected k entries");
  for (const auto value : n) {
    if (value == 0) throw DomainError("decompose_tuple: entries must be positive");
  }
  const int v = (1 << k) - 1;
  std::vector<std::uint64_t> a(static_cast<std::size_t>(v), 1);
  // primes dividing some n_i, by trial division of the running cofactors
  std::set<std::uint64_t> primes;
  for (std::uint64_t rest : n) {
    for (std::uint64_t p = 2; p * p <= rest; ++p) {
      if (rest % p != 0) continue;
      primes.insert(p);
      while (rest % p == 0) rest /= p;
    }
    if (rest > 1) primes.insert(rest);
  }
  std::vector<unsigned> nu(static_cast<std::size_t>(k));
  for (const std::uint64_t p : primes) {
    for (int i = 0; i < k; ++i) nu[static_cast<std::size_t>(i)] = exactmath::valuation(n[static_cast<std::size_t>(i)], p);
    for (int j = 1; j <= v; ++j) {
      unsigned lo = ~0u;
      unsigned hi = 0;  // max over an empty set is 0
      for (int i = 0; i < k; ++i) {
        if ((j >> i) & 1) {
          lo = std::min(lo, nu[static_cast<std::size_t>(i)]);
        } else {
          hi = std::max(hi, nu[static_cast<std::size_t>(i)]);
        }
      }
      for (unsigned e = hi; e < lo; ++e) a[static_cast<std::size_t>(j - 1)] *= p;
    }
  }
  return a;
}

bool is_gwise_coprime(const GenericGraph& g, std::span<const std::uint64_t> a) {
  if (a.size() != static_cast<std::size_t>(g.vertex_count())) {
    throw DomainError("is_gwise_coprime: tuple length must equal the vertex count");
  }
  return std::all_of(g.edges().begin(), g.edges().end(), [&](const auto& edge) {
    return std::gcd(a[static_cast<std::size_t>(edge.first - 1)], a[static_cast<std::size_t>(edge.second - 1)]) == 1;
  });
}

std::string dump(const CoprimalityGraph& g) {
  std::ostringstream out;
  out << "k=" << g.k << '\n';
  out << "v=" << g.vertex_count() << '\n';
  out << "edges=";
  bool first = true;
  for (const auto& [i, j] : g.graph.edges()) {
    out << (first ? "" : ",") << i << '-' << j;
    first = false;
  }
  out << '\n';
  for (std::size_t i = 0; i < g.constraints.size(); ++i) {
    out << "A_" << i + 1 << '=';
    for (std::size_t t = 0; t < g.constraints[i].size(); ++t) out << (t ? "," : "") << g.constraints[i][t];
    out << '\n';
  }
  return out.str();
}

}  // namespace lcmsum::coprimality
