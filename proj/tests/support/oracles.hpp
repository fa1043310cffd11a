#pragma once

// Independent reference computations used only by the tests. None of these
// reuse the library's search, DP or chain code paths.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <functional>
#include <random>
#include <vector>

#include "moddeg/generators.hpp"
#include "moddeg/graph.hpp"

namespace moddeg::testing {

// Dense adjacency matrix straight from the edge list.
inline std::vector<std::vector<bool>> adjacency_matrix(const BipartiteGraph& g) {
  std::vector<std::vector<bool>> adj(g.universe(), std::vector<bool>(g.universe(), false));
  for (auto [u, v] : g.edges()) {
    adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = true;
    adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = true;
  }
  return adj;
}

// Double-loop recount of the residue condition on a member mask.
inline bool naive_residue_ok(const std::vector<std::vector<bool>>& adj, const std::vector<bool>& in, int r, int q) {
  const auto n = adj.size();
  for (std::size_t v = 0; v < n; ++v) {
    if (!in[v]) continue;
    int degree = 0;
    for (std::size_t u = 0; u < n; ++u) degree += (in[u] && adj[v][u]) ? 1 : 0;
    if (degree % q != r) return false;
  }
  return true;
}

// f(G, r, q) over all 2^n subsets. n <= 20 or so.
inline int naive_f(const BipartiteGraph& g, int r, int q) {
  const auto adj = adjacency_matrix(g);
  const auto n = g.universe();
  int best = 0;
  std::vector<bool> in(n);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const int size = std::popcount(mask);
    if (size <= best) continue;
    for (std::size_t v = 0; v < n; ++v) in[v] = ((mask >> v) & 1U) != 0;
    if (naive_residue_ok(adj, in, r, q)) best = size;
  }
  return best;
}

// Every subset of `candidates` (given as a list) that dominates `targets` and
// from which no single element can be removed.
inline std::vector<std::vector<int>> all_minimal_dominating_sets(const BipartiteGraph& g,
                                                                 const std::vector<int>& targets,
                                                                 const std::vector<int>& candidates) {
  const auto adj = adjacency_matrix(g);
  auto dominates = [&](std::uint64_t mask) {
    for (int t : targets) {
      bool hit = false;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (((mask >> i) & 1U) && adj[static_cast<std::size_t>(t)][static_cast<std::size_t>(candidates[i])]) hit = true;
      }
      if (!hit) return false;
    }
    return true;
  };
  std::vector<std::vector<int>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << candidates.size()); ++mask) {
    if (!dominates(mask)) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < candidates.size() && minimal; ++i) {
      if (((mask >> i) & 1U) && dominates(mask & ~(std::uint64_t{1} << i))) minimal = false;
    }
    if (!minimal) continue;
    std::vector<int> set;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if ((mask >> i) & 1U) set.push_back(candidates[i]);
    }
    out.push_back(set);
  }
  return out;
}

// Exact P(Bin(n, 2^-p) ≡ residue mod k) as a rational, from binomial sums
// Σ_{j ≡ residue} C(n, j) (2^p - 1)^{n-j} / 2^{pn}.
struct ExactProbability {
  boost::multiprecision::cpp_int numerator;
  boost::multiprecision::cpp_int denominator;

  double to_double() const {
    return static_cast<double>(boost::multiprecision::cpp_rational(numerator, denominator));
  }
};

inline ExactProbability exact_residue_probability(int n, int k, int p, int residue) {
  using boost::multiprecision::cpp_int;
  cpp_int binom = 1;
  cpp_int total = 0;
  const cpp_int stay = (cpp_int(1) << p) - 1;
  for (int j = 0; j <= n; ++j) {
    if (j % k == residue) total += binom * boost::multiprecision::pow(stay, static_cast<unsigned>(n - j));
    binom = binom * (n - j) / (j + 1);
  }
  return {total, cpp_int(1) << (p * n)};
}

// Enumerates all 2^n outcomes of n Bernoulli(2^-p) draws.
inline std::vector<double> enumerate_residues(int n, int k, int p) {
  const double alpha = std::ldexp(1.0, -p);
  std::vector<double> out(static_cast<std::size_t>(k), 0.0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const int ones = std::popcount(mask);
    out[static_cast<std::size_t>(ones % k)] += std::pow(alpha, ones) * std::pow(1 - alpha, n - ones);
  }
  return out;
}

// E|{v ∈ scored : |N(v) ∩ U| ≡ 1 mod k}| by summing over every U ⊆ pool
// consistent with the fixed decisions, weighted by its probability.
inline double enumerate_expectation(const BipartiteGraph& g, const std::vector<int>& pool,
                                    const std::vector<int>& scored, int k, int p,
                                    const std::vector<int>& fixed_in, const std::vector<int>& fixed_out) {
  const auto adj = adjacency_matrix(g);
  const double alpha = std::ldexp(1.0, -p);
  std::vector<int> open;
  for (int w : pool) {
    if (std::find(fixed_in.begin(), fixed_in.end(), w) == fixed_in.end() &&
        std::find(fixed_out.begin(), fixed_out.end(), w) == fixed_out.end()) {
      open.push_back(w);
    }
  }
  double total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << open.size()); ++mask) {
    const int ones = std::popcount(mask);
    const double weight = std::pow(alpha, ones) * std::pow(1 - alpha, static_cast<int>(open.size()) - ones);
    std::vector<int> chosen(fixed_in);
    for (std::size_t i = 0; i < open.size(); ++i) {
      if ((mask >> i) & 1U) chosen.push_back(open[i]);
    }
    int hits = 0;
    for (int v : scored) {
      int d = 0;
      for (int w : chosen) d += adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] ? 1 : 0;
      if (d % k == 1) ++hits;
    }
    total += weight * hits;
  }
  return total;
}

// Best |T_U ∩ scored| over every U ⊆ pool.
inline int exhaustive_best_hits(const BipartiteGraph& g, const std::vector<int>& pool, const std::vector<int>& scored,
                                int k) {
  const auto adj = adjacency_matrix(g);
  int best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pool.size()); ++mask) {
    int hits = 0;
    for (int v : scored) {
      int d = 0;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (((mask >> i) & 1U) && adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(pool[i])]) ++d;
      }
      if (d % k == 1) ++hits;
    }
    best = std::max(best, hits);
  }
  return best;
}

// Every connected bipartite graph whose sides have sizes n1 >= n2 >= 1 and
// n1 + n2 <= max_order, as labelled edge subsets (not up to isomorphism).
inline void for_each_connected_bipartite(int max_order, const std::function<void(const BipartiteGraph&)>& visit) {
  for (int n = 2; n <= max_order; ++n) {
    for (int n2 = 1; n2 <= n / 2; ++n2) {
      const int n1 = n - n2;
      const int pairs = n1 * n2;
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << pairs); ++mask) {
        std::vector<Edge> edges;
        std::vector<int> parent(static_cast<std::size_t>(n));
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> root = [&](int x) {
          return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = root(parent[static_cast<std::size_t>(x)]);
        };
        int components = n;
        for (int e = 0; e < pairs; ++e) {
          if (((mask >> e) & 1U) == 0) continue;
          const int u = e / n2;
          const int v = n1 + e % n2;
          edges.emplace_back(u, v);
          const int a = root(u);
          const int b = root(v);
          if (a != b) {
            parent[static_cast<std::size_t>(a)] = b;
            --components;
          }
        }
        if (components != 1) continue;
        visit(BipartiteGraph::from_labeled_edges(n1, n2, edges));
      }
    }
  }
}

// Random graph on at most max_order vertices with both sides non-empty.
inline BipartiteGraph random_small_graph(std::mt19937_64& rng, int min_order, int max_order) {
  std::uniform_int_distribution<int> order(min_order, max_order);
  const int n = order(rng);
  std::uniform_int_distribution<int> split(1, n - 1);
  const int n1 = split(rng);
  std::uniform_real_distribution<double> density(0.1, 0.9);
  return generate(RandomBipartite{n1, n - n1, density(rng), rng()}).graph;
}

// Same graph with vertices renamed by a random permutation that keeps sides.
inline BipartiteGraph relabel_within_sides(const BipartiteGraph& g, std::mt19937_64& rng) {
  std::vector<int> perm1(static_cast<std::size_t>(g.n1()));
  std::vector<int> perm2(static_cast<std::size_t>(g.n2()));
  std::iota(perm1.begin(), perm1.end(), 0);
  std::iota(perm2.begin(), perm2.end(), g.n1());
  std::shuffle(perm1.begin(), perm1.end(), rng);
  std::shuffle(perm2.begin(), perm2.end(), rng);
  auto map = [&](int v) {
    return v < g.n1() ? perm1[static_cast<std::size_t>(v)] : perm2[static_cast<std::size_t>(v - g.n1())];
  };
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) edges.emplace_back(map(u), map(v));
  return BipartiteGraph::from_labeled_edges(g.n1(), g.n2(), edges);
}

}  // namespace moddeg::testing
