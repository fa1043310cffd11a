#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "moddeg/graph.hpp"

namespace moddeg {

struct CompleteBipartite {
  int a = 1;
  int b = 1;
};

// Each cross pair independently with probability edge_prob.
struct RandomBipartite {
  int n1 = 1;
  int n2 = 1;
  double edge_prob = 0.5;
  std::uint64_t seed = 0;
};

struct Matching {
  int n = 1;
};

// Every side-1 vertex gets d distinct random side-2 neighbours.
struct RandomRegularish {
  int n1 = 1;
  int n2 = 1;
  int d = 1;
  std::uint64_t seed = 0;
};

// One side-2 centre with m side-1 leaves.
struct Star {
  int m = 1;
};

// `hubs` side-2 vertices each owning `pendants` degree-one leaves, plus
// `extra` side-1 vertices joined to each hub with probability edge_prob.
// With pendants >= k-1 every hub survives to the last chain level.
struct PendantHubs {
  int hubs = 1;
  int pendants = 1;
  int extra = 0;
  double edge_prob = 0.5;
  std::uint64_t seed = 0;
};

using GraphFamily = std::variant<CompleteBipartite, RandomBipartite, Matching, RandomRegularish, Star, PendantHubs>;

struct GeneratedGraph {
  BipartiteGraph graph;
  // Family, parameters and, for random families, how many isolated vertices
  // were repaired by attaching them to a random opposite vertex.
  std::string descriptor;
  int repaired = 0;
};

// Throws std::invalid_argument on impossible parameters.
GeneratedGraph generate(const GraphFamily& family);

}  // namespace moddeg
