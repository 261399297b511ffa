#include "lcmsum/polytope.hpp"

#include "lcmsum/exactmath.hpp"

#include <gmp.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

namespace lcmsum::polytope {

std::string to_string(PolytopeKind kind) {
  switch (kind) {
    case PolytopeKind::D:
      return "D";
    case PolytopeKind::DStar:
      return "D_star";
    case PolytopeKind::DStar2:
      return "D_star2";
    case PolytopeKind::DStar3:
      return "D_star3";
    case PolytopeKind::T:
      return "T";
  }
  return "?";
}

PolytopeKind parse_kind(const std::string& name) {
  for (const auto kind :
       {PolytopeKind::D, PolytopeKind::DStar, PolytopeKind::DStar2, PolytopeKind::DStar3, PolytopeKind::T}) {
    if (to_string(kind) == name) return kind;
  }
  throw DomainError("unknown polytope kind '" + name + "' (expected D, D_star, D_star2, D_star3, T)");
}

HyperbolicPolytope make_polytope(int dim, std::vector<std::vector<int>> constraints) {
  if (dim < 1 || dim > kMaxDimension) throw DomainError("polytope dimension must be in 1..16");
  std::vector<bool> covered(static_cast<std::size_t>(dim), false);
  for (auto& c : constraints) {
    if (c.empty()) throw DomainError("polytope constraint must be non-empty");
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (const int j : c) {
      if (j < 0 || j >= dim) throw DomainError("polytope constraint index out of range");
      covered[static_cast<std::size_t>(j)] = true;
    }
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end()) {
    throw DomainError("polytope is unbounded: some coordinate is in no constraint");
  }
  HyperbolicPolytope p;
  p.dim = dim;
  p.constraints = std::move(constraints);
  p.labels.resize(static_cast<std::size_t>(dim));
  for (int j = 0; j < dim; ++j) p.labels[static_cast<std::size_t>(j)] = j + 1;
  return p;
}

HyperbolicPolytope build_polytope(PolytopeKind kind, int k) {
  if (k < 2 || k > 4) throw DomainError("build_polytope: k must be in 2..4");
  const int v = (1 << k) - 1;
  const auto is_power_of_two = [](int j) { return (j & (j - 1)) == 0; };
  std::vector<int> labels;
  for (int j = 1; j <= v; ++j) {
    const bool drop_top = (kind == PolytopeKind::DStar || kind == PolytopeKind::DStar3) && j == v;
    const bool drop_single = (kind == PolytopeKind::DStar2 || kind == PolytopeKind::DStar3) && is_power_of_two(j);
    if (!drop_top && !drop_single) labels.push_back(j);
  }
  const int dim = static_cast<int>(labels.size());
  std::vector<std::vector<int>> constraints;
  if (kind == PolytopeKind::T) {
    constraints.emplace_back();
    for (int c = 0; c < dim; ++c) constraints.back().push_back(c);
  } else {
    for (int bit = 0; bit < k; ++bit) {
      std::vector<int> row;
      for (int c = 0; c < dim; ++c) {
        if ((labels[static_cast<std::size_t>(c)] >> bit) & 1) row.push_back(c);
      }
      constraints.push_back(std::move(row));
    }
  }
  HyperbolicPolytope p = make_polytope(dim, std::move(constraints));
  p.labels = std::move(labels);
  return p;
}

namespace {

constexpr std::uint64_t kPrimeModuli[] = {(std::uint64_t{1} << 61) - 1, (std::uint64_t{1} << 62) - 57,
                                          (std::uint64_t{1} << 63) - 25};

// Addition in Z/2^64 (modulus == 0) or Z/p with p < 2^63.
struct ModAdd {
  std::uint64_t modulus;
  std::uint64_t operator()(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    if (modulus == 0) return s;
    return s >= modulus ? s - modulus : s;
  }
};

// L(0..max_dilation) modulo `modulus` (0 = 2^64).
std::vector<std::uint64_t> counts_modulo(const HyperbolicPolytope& p, int max_dilation, std::uint64_t modulus) {
  const ModAdd add{modulus};
  const std::size_t c = p.constraints.size();
  const std::size_t side = static_cast<std::size_t>(max_dilation) + 1;
  std::array<std::size_t, kMaxConstraints> size{1, 1, 1, 1};
  std::array<std::size_t, kMaxConstraints> stride{0, 0, 0, 0};
  std::size_t cells = 1;
  for (std::size_t i = 0; i < kMaxConstraints; ++i) {
    if (i < c) size[i] = side;
    stride[i] = cells;
    cells *= size[i];
  }
  std::vector<std::uint64_t> table(cells, 0);
  table[0] = 1;
  // Each coordinate t adds t to the budget of every constraint containing it:
  // new[b] = sum_{t>=0} old[b - t e_M] = old[b] + new[b - e_M], done in place.
  for (int coord = 0; coord < p.dim; ++coord) {
    std::array<std::size_t, kMaxConstraints> start{0, 0, 0, 0};
    std::size_t offset = 0;
    for (std::size_t i = 0; i < c; ++i) {
      const auto& row = p.constraints[i];
      if (std::binary_search(row.begin(), row.end(), coord)) {
        start[i] = 1;
        offset += stride[i];
      }
    }
    for (std::size_t b3 = start[3]; b3 < size[3]; ++b3) {
      for (std::size_t b2 = start[2]; b2 < size[2]; ++b2) {
        for (std::size_t b1 = start[1]; b1 < size[1]; ++b1) {
          std::uint64_t* line = table.data() + b3 * stride[3] + b2 * stride[2] + b1 * stride[1];
          const std::uint64_t* source = line - offset;
          for (std::size_t b0 = start[0]; b0 < size[0]; ++b0) line[b0] = add(line[b0], source[b0]);
        }
      }
    }
  }
  // bucket by the largest budget used, then prefix sums give L(N)
  std::vector<std::uint64_t> by_max(side, 0);
  for (std::size_t b3 = 0; b3 < size[3]; ++b3) {
    for (std::size_t b2 = 0; b2 < size[2]; ++b2) {
      for (std::size_t b1 = 0; b1 < size[1]; ++b1) {
        const std::size_t outer = std::max({b3, b2, b1});
        const std::uint64_t* line = table.data() + b3 * stride[3] + b2 * stride[2] + b1 * stride[1];
        for (std::size_t b0 = 0; b0 < size[0]; ++b0) {
          const std::size_t m = std::max(outer, b0);
          by_max[m] = add(by_max[m], line[b0]);
        }
      }
    }
  }
  for (std::size_t n = 1; n < side; ++n) by_max[n] = add(by_max[n], by_max[n - 1]);
  return by_max;
}

}  // namespace

std::vector<BigInt> lattice_counts(const HyperbolicPolytope& p, int max_dilation, const LatticeOptions& options) {
  if (max_dilation < 0) throw DomainError("lattice_counts: dilation must be >= 0");
  const std::size_t c = p.constraints.size();
  if (c == 0 || c > kMaxConstraints) throw DomainError("lattice_counts: need 1..4 constraints");
  const std::uint64_t side = static_cast<std::uint64_t>(max_dilation) + 1;
  std::uint64_t cells = 1;
  for (std::size_t i = 0; i < c; ++i) {
    if (cells > options.state_budget / side) {
      throw ResourceError("lattice_counts: state space (" + std::to_string(side) + ")^" + std::to_string(c) +
                          " exceeds budget " + std::to_string(options.state_budget));
    }
    cells *= side;
  }
  // Every count is at most (N+1)^dim; take enough moduli for an exact CRT.
  const BigInt bound = pow_big(BigInt(side), static_cast<unsigned>(p.dim));
  BigInt modulus_product = BigInt(1) << 64;
  std::vector<std::vector<std::uint64_t>> residues;
  residues.push_back(counts_modulo(p, max_dilation, 0));
  std::vector<std::uint64_t> used_primes;
  for (const std::uint64_t q : kPrimeModuli) {
    if (modulus_product > bound) break;
    residues.push_back(counts_modulo(p, max_dilation, q));
    used_primes.push_back(q);
    modulus_product *= q;
  }
  if (modulus_product <= bound) throw ResourceError("lattice_counts: counts too large for the CRT moduli");

  std::vector<BigInt> out(side);
  for (std::size_t n = 0; n < side; ++n) {
    // Garner-style incremental CRT
    BigInt value = residues[0][n];
    BigInt modulus = BigInt(1) << 64;
    for (std::size_t r = 0; r < used_primes.size(); ++r) {
      const BigInt q = used_primes[r];
      BigInt diff = (BigInt(residues[r + 1][n]) - value) % q;
      if (diff < 0) diff += q;
      BigInt inverse;
      BigInt m_mod_q = modulus % q;
      mpz_invert(inverse.backend().data(), m_mod_q.backend().data(), q.backend().data());
      const BigInt t = (diff * inverse) % q;
      value += modulus * t;
      modulus *= q;
    }
    out[n] = value;
  }
  return out;
}

BigInt lattice_count(const HyperbolicPolytope& p, int dilation, const LatticeOptions& options) {
  return lattice_counts(p, dilation, options).back();
}

VolumeResult ehrhart_volume_detailed(const HyperbolicPolytope& p, const EhrhartOptions& options) {
  const int v = p.dim;
  std::vector<BigInt> last_counts;
  int last_period = 0;
  for (const int period : options.period_candidates) {
    if (period < 1) throw DomainError("ehrhart_volume: period candidates must be positive");
    const int max_n = (period - 1) + (v + 2) * period;
    const std::vector<BigInt> counts = lattice_counts(p, max_n, options.lattice);
    bool stable = true;
    ExactRational volume;
    for (int r = 0; r < period && stable; ++r) {
      std::vector<BigInt> seq;
      for (int m = 0; m <= v + 2; ++m) seq.push_back(counts[static_cast<std::size_t>(r + m * period)]);
      const std::vector<BigInt> top = exactmath::forward_differences(seq, static_cast<unsigned>(v));
      if (top.size() != 3 || top[0] != top[1] || top[1] != top[2]) {
        stable = false;
        break;
      }
      std::vector<exactmath::Sample> window;
      for (int m = 0; m <= v; ++m) window.emplace_back(r + m * period, ExactRational(seq[static_cast<std::size_t>(m)]));
      const ExactRational lead = exactmath::leading_coeff_by_differences(window, static_cast<unsigned>(v));
      if (r == 0) {
        volume = lead;
      } else if (lead != volume) {
        stable = false;
      }
    }
    if (stable) {
      VolumeResult result;
      result.volume = volume;
      result.samples.period = period;
      result.samples.stabilized = true;
      for (int m = 0; m * period <= max_n; ++m) result.samples.counts.push_back(counts[static_cast<std::size_t>(m * period)]);
      return result;
    }
    last_counts = counts;
    last_period = period;
  }
  std::ostringstream msg;
  msg << "ehrhart_volume: no candidate period stabilized (last tried " << last_period << "); raw counts L(0..)="
      << "[";
  for (std::size_t i = 0; i < last_counts.size(); ++i) msg << (i ? ", " : "") << last_counts[i];
  msg << "]";
  throw ComputationError(msg.str());
}

ExactRational ehrhart_volume(const HyperbolicPolytope& p, const EhrhartOptions& options) {
  return ehrhart_volume_detailed(p, options).volume;
}

ExactRational cached_volume(PolytopeKind kind, int k) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, ExactRational> cache;
  const auto key = std::make_pair(static_cast<int>(kind), k);
  {
    std::lock_guard lock(mutex);
    if (const auto it = cache.find(key); it != cache.end()) return it->second;
  }
  ExactRational volume = ehrhart_volume(build_polytope(kind, k));
  std::lock_guard lock(mutex);
  cache.emplace(key, volume);
  return volume;
}

VolumeRelations volume_relations_check(int k) {
  if (k < 2 || k > 4) throw DomainError("volume_relations_check: k must be in 2..4");
  VolumeRelations out;
  out.k = k;
  out.vol_d = cached_volume(PolytopeKind::D, k);
  out.vol_d_star = cached_volume(PolytopeKind::DStar, k);
  out.vol_d_star2 = cached_volume(PolytopeKind::DStar2, k);
  out.vol_d_star3 = cached_volume(PolytopeKind::DStar3, k);
  out.star_relation = out.vol_d == out.vol_d_star / ExactRational((1 << k) - 1);
  out.star2_relation = out.vol_d_star2 == out.vol_d_star3 / ExactRational((1 << k) - k - 1);
  return out;
}

std::vector<std::vector<int>> ieqs_rows(const HyperbolicPolytope& p) {
  std::vector<std::vector<int>> rows;
  for (const auto& constraint : p.constraints) {
    std::vector<int> row(static_cast<std::size_t>(p.dim) + 1, 0);
    row[0] = 1;
    for (const int j : constraint) row[static_cast<std::size_t>(j) + 1] = -1;
    rows.push_back(std::move(row));
  }
  for (int j = 0; j < p.dim; ++j) {
    std::vector<int> row(static_cast<std::size_t>(p.dim) + 1, 0);
    row[static_cast<std::size_t>(j) + 1] = 1;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string ieqs_matrix(const HyperbolicPolytope& p) {
  std::ostringstream out;
  out << '[';
  const auto rows = ieqs_rows(p);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << (r ? ", [" : "[");
    for (std::size_t c = 0; c < rows[r].size(); ++c) out << (c ? ", " : "") << rows[r][c];
    out << ']';
  }
  out << ']';
  return out.str();
}

std::string export_ieqs(const HyperbolicPolytope& p) {
  return "P=Polyhedron(ieqs=" + ieqs_matrix(p) + ")\nP.volume()";
}

std::string strip_whitespace(const std::string& text) {
  std::string out;
  for (const char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  }
  return out;
}

}  // namespace lcmsum::polytope
