#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "moddeg/graph.hpp"
#include "moddeg/vertex_set.hpp"

namespace moddeg {

inline constexpr std::uint64_t kDefaultOracleBudget = 100'000'000;

struct OracleResult {
  int value = 0;        // f(G, r, q); a lower bound when timed_out
  VertexSet witness;    // |witness| == value
  std::uint64_t explored = 0;
  bool timed_out = false;
};

// Exact f(G, r, q): the largest non-empty H with every induced degree ≡ r
// (mod q), or 0 if there is none. Branch and prune over vertices in
// descending degree order. Meant for graphs of up to about 26 vertices.
OracleResult exact_f(const BipartiteGraph& graph, const ResidueSpec& spec,
                     std::uint64_t budget = kDefaultOracleBudget);

struct EmpiricalEntry {
  std::size_t index = 0;
  int order = 0;
  int value = 0;              // exact f(G,1,k), or the best lower bound
  bool exact = true;
  int construction_size = 0;
  double ratio = 0;           // value / order
};

struct EmpiricalReport {
  int k = 2;
  std::vector<EmpiricalEntry> entries;
  std::size_t inexact = 0;
  double min_ratio = 0;   // over exact entries
  double mean_ratio = 0;  // over exact entries
  double max_ratio = 0;   // over exact entries
};

// f(G,1,k)/|G| over the family. Entries whose search runs out of budget fall
// back to max(search best, construction size) and are flagged inexact.
EmpiricalReport empirical_c(std::span<const BipartiteGraph> graphs, int k,
                            std::uint64_t budget = kDefaultOracleBudget);

}  // namespace moddeg
