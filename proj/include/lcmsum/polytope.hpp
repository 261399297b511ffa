#pragma once

// Exact volumes of the 0/1 "hyperbolic" polytopes
//   { t in [0, inf)^dim : sum_{j in A_i} t_j <= 1 for every i }
// through Ehrhart lattice-point counts and finite differences.

#include "lcmsum/errors.hpp"
#include "lcmsum/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lcmsum::polytope {

// D: all labels. DStar: drop the all-ones label. DStar2: drop powers of two.
// DStar3: drop both. T: the standard simplex on all labels.
enum class PolytopeKind { D, DStar, DStar2, DStar3, T };

std::string to_string(PolytopeKind kind);      // "D", "D_star", "D_star2", "D_star3", "T"
PolytopeKind parse_kind(const std::string& name);  // throws DomainError

inline constexpr int kMaxDimension = 16;
inline constexpr int kMaxConstraints = 4;

struct HyperbolicPolytope {
  int dim = 0;
  std::vector<std::vector<int>> constraints;  // 0-based coordinates, ascending
  std::vector<int> labels;                    // vertex label carried by each coordinate
};

// Validates: dim <= 16, every constraint non-empty, union covers every coordinate.
HyperbolicPolytope make_polytope(int dim, std::vector<std::vector<int>> constraints);

// 2 <= k <= 4. Coordinates follow increasing vertex label.
HyperbolicPolytope build_polytope(PolytopeKind kind, int k);

struct LatticeOptions {
  // Maximum number of DP cells (N+1)^#constraints; 8 bytes each.
  std::uint64_t state_budget = 200'000'000;
};

// L(0), ..., L(max_dilation): integer points of the N-th dilates.
// One DP over per-constraint budget vectors serves every N at once,
// because the count at N only depends on max_i(budget_i) <= N.
std::vector<BigInt> lattice_counts(const HyperbolicPolytope& p, int max_dilation, const LatticeOptions& options = {});
BigInt lattice_count(const HyperbolicPolytope& p, int dilation, const LatticeOptions& options = {});

struct EhrhartSamples {
  int period = 0;
  std::vector<BigInt> counts;  // L(0), L(P), L(2P), ...
  bool stabilized = false;
};

struct EhrhartOptions {
  std::vector<int> period_candidates{1, 2, 6};
  LatticeOptions lattice;
};

struct VolumeResult {
  ExactRational volume;
  EhrhartSamples samples;
};

// Accepts the first candidate period P for which, on every residue class
// mod P, the dim-th differences of L(r), L(r+P), ..., L(r+(dim+2)P) agree
// across the three windows and all classes give the same leading
// coefficient. Throws ComputationError (with raw counts) otherwise.
VolumeResult ehrhart_volume_detailed(const HyperbolicPolytope& p, const EhrhartOptions& options = {});
ExactRational ehrhart_volume(const HyperbolicPolytope& p, const EhrhartOptions& options = {});

// Memoized ehrhart_volume(build_polytope(kind, k)); thread-safe.
ExactRational cached_volume(PolytopeKind kind, int k);

struct VolumeRelations {
  int k = 0;
  ExactRational vol_d, vol_d_star, vol_d_star2, vol_d_star3;
  bool star_relation = false;   // vol(D) == vol(D*) / (2^k - 1)
  bool star2_relation = false;  // vol(D**) == vol(D***) / (2^k - k - 1)
  bool ok() const { return star_relation && star2_relation; }
};

VolumeRelations volume_relations_check(int k);

// Inequality rows: "[1, -d_1, ..., -d_dim]" per constraint, then one unit
// row per coordinate.
std::vector<std::vector<int>> ieqs_rows(const HyperbolicPolytope& p);
// Python list syntax for the rows: "[[1, -1, 0], [0, 1, 0], ...]".
std::string ieqs_matrix(const HyperbolicPolytope& p);
// Worksheet text: "P=Polyhedron(ieqs=...)\nP.volume()".
std::string export_ieqs(const HyperbolicPolytope& p);

// Drops every whitespace character; listings are compared in this form.
std::string strip_whitespace(const std::string& text);

}  // namespace lcmsum::polytope
