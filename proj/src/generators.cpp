#include "moddeg/generators.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "moddeg/rng.hpp"

namespace moddeg {

namespace {

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

// Attaches every isolated vertex to a uniformly random vertex on the other
// side; returns how many were attached.
int repair_isolated(int n1, int n2, std::vector<Edge>& edges, Rng& rng) {
  std::vector<int> degree(static_cast<std::size_t>(n1 + n2), 0);
  for (auto [u, v] : edges) {
    ++degree[static_cast<std::size_t>(u)];
    ++degree[static_cast<std::size_t>(v)];
  }
  int repaired = 0;
  std::uniform_int_distribution<int> pick2(n1, n1 + n2 - 1);
  for (Vertex u = 0; u < n1; ++u) {
    if (degree[static_cast<std::size_t>(u)] != 0) continue;
    const Vertex v = pick2(rng);
    edges.emplace_back(u, v);
    ++degree[static_cast<std::size_t>(u)];
    ++degree[static_cast<std::size_t>(v)];
    ++repaired;
  }
  std::uniform_int_distribution<int> pick1(0, n1 - 1);
  for (Vertex v = n1; v < n1 + n2; ++v) {
    if (degree[static_cast<std::size_t>(v)] != 0) continue;
    edges.emplace_back(pick1(rng), v);
    ++repaired;
  }
  return repaired;
}

struct Builder {
  GeneratedGraph operator()(const CompleteBipartite& f) const {
    require(f.a >= 1 && f.b >= 1, "complete_bipartite needs a, b >= 1");
    std::vector<Edge> edges;
    for (Vertex u = 0; u < f.a; ++u) {
      for (Vertex v = f.a; v < f.a + f.b; ++v) edges.emplace_back(u, v);
    }
    return {BipartiteGraph::from_labeled_edges(f.a, f.b, edges), fmt::format("complete_bipartite(a={},b={})", f.a, f.b),
            0};
  }

  GeneratedGraph operator()(const RandomBipartite& f) const {
    require(f.n1 >= 1 && f.n2 >= 1, "random needs n1, n2 >= 1");
    require(f.edge_prob > 0 && f.edge_prob <= 1, "random needs edge_prob in (0, 1]");
    Rng rng(f.seed);
    std::bernoulli_distribution coin(f.edge_prob);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < f.n1; ++u) {
      for (Vertex v = f.n1; v < f.n1 + f.n2; ++v) {
        if (coin(rng)) edges.emplace_back(u, v);
      }
    }
    const int repaired = repair_isolated(f.n1, f.n2, edges, rng);
    return {BipartiteGraph::from_labeled_edges(f.n1, f.n2, edges),
            fmt::format("random(n1={},n2={},p={},seed={},repaired={})", f.n1, f.n2, f.edge_prob, f.seed, repaired),
            repaired};
  }

  GeneratedGraph operator()(const Matching& f) const {
    require(f.n >= 1, "matching needs n >= 1");
    std::vector<Edge> edges;
    for (Vertex i = 0; i < f.n; ++i) edges.emplace_back(i, f.n + i);
    return {BipartiteGraph::from_labeled_edges(f.n, f.n, edges), fmt::format("matching(n={})", f.n), 0};
  }

  GeneratedGraph operator()(const RandomRegularish& f) const {
    require(f.n1 >= 1 && f.n2 >= 1, "random_regularish needs n1, n2 >= 1");
    require(f.d >= 1, "random_regularish needs d >= 1");
    if (f.d > f.n2) throw std::invalid_argument("random_regularish needs d <= n2");
    Rng rng(f.seed);
    std::vector<Vertex> side2(static_cast<std::size_t>(f.n2));
    std::iota(side2.begin(), side2.end(), f.n1);
    std::vector<Edge> edges;
    std::vector<Vertex> picked;
    for (Vertex u = 0; u < f.n1; ++u) {
      picked.clear();
      std::sample(side2.begin(), side2.end(), std::back_inserter(picked), f.d, rng);
      for (Vertex v : picked) edges.emplace_back(u, v);
    }
    const int repaired = repair_isolated(f.n1, f.n2, edges, rng);
    return {BipartiteGraph::from_labeled_edges(f.n1, f.n2, edges),
            fmt::format("random_regularish(n1={},n2={},d={},seed={},repaired={})", f.n1, f.n2, f.d, f.seed, repaired),
            repaired};
  }

  GeneratedGraph operator()(const Star& f) const {
    require(f.m >= 1, "star needs m >= 1");
    std::vector<Edge> edges;
    for (Vertex leaf = 0; leaf < f.m; ++leaf) edges.emplace_back(leaf, f.m);
    return {BipartiteGraph::from_labeled_edges(f.m, 1, edges), fmt::format("star(m={})", f.m), 0};
  }

  GeneratedGraph operator()(const PendantHubs& f) const {
    require(f.hubs >= 1 && f.pendants >= 1 && f.extra >= 0, "pendant_hubs needs hubs, pendants >= 1, extra >= 0");
    require(f.edge_prob > 0 && f.edge_prob <= 1, "pendant_hubs needs edge_prob in (0, 1]");
    const int leaves = f.hubs * f.pendants;
    const int n1 = leaves + f.extra;
    Rng rng(f.seed);
    std::bernoulli_distribution coin(f.edge_prob);
    std::vector<Edge> edges;
    for (int h = 0; h < f.hubs; ++h) {
      for (int j = 0; j < f.pendants; ++j) edges.emplace_back(h * f.pendants + j, n1 + h);
    }
    for (Vertex u = leaves; u < n1; ++u) {
      for (int h = 0; h < f.hubs; ++h) {
        if (coin(rng)) edges.emplace_back(u, n1 + h);
      }
    }
    const int repaired = repair_isolated(n1, f.hubs, edges, rng);
    return {BipartiteGraph::from_labeled_edges(n1, f.hubs, edges),
            fmt::format("pendant_hubs(hubs={},pendants={},extra={},p={},seed={},repaired={})", f.hubs, f.pendants,
                        f.extra, f.edge_prob, f.seed, repaired),
            repaired};
  }
};

}  // namespace

GeneratedGraph generate(const GraphFamily& family) { return std::visit(Builder{}, family); }

}  // namespace moddeg
