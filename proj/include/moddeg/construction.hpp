#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "moddeg/graph.hpp"
#include "moddeg/rng.hpp"
#include "moddeg/vertex_set.hpp"

namespace moddeg {

// Raised when some target has no neighbour among the candidates.
class DominationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DominatingSet {
  VertexSet dominators;
  // (w, v_w) sorted by w, where N(v_w) ∩ dominators = {w}.
  std::vector<std::pair<Vertex, Vertex>> private_map;

  Vertex private_of(Vertex w) const;
  VertexSet privates(std::size_t universe) const;
};

// Minimal (not minimum) dominating set of `targets` drawn from `candidates`.
// Starts from all candidates and drops each, in increasing id order, whose
// removal keeps every target dominated. Private neighbours are the smallest
// qualifying target id.
DominatingSet minimal_dominating_set(const BipartiteGraph& graph, const VertexSet& targets,
                                     const VertexSet& candidates);

struct ChainLevel {
  VertexSet dominators;  // W_i ⊆ side 2
  VertexSet privates;    // S_i ⊆ side 1
  std::vector<std::pair<Vertex, Vertex>> private_map;

  Vertex private_of(Vertex w) const;
};

// W_1 ⊇ W_2 ⊇ ... ⊇ W_{k-1} with private sets S_1..S_{k-1} and the
// remainder T = V_1 minus every S_i.
struct DominatingChain {
  int k = 2;
  std::vector<ChainLevel> levels;  // levels[i - 1] holds level i
  VertexSet remainder;

  const ChainLevel& level(int i) const { return levels.at(static_cast<std::size_t>(i - 1)); }
  const VertexSet& first_dominators() const { return levels.front().dominators; }
  const VertexSet& last_dominators() const { return levels.back().dominators; }
};

DominatingChain build_chain(const BipartiteGraph& graph, int k);

// Checks nesting, disjointness, |S_i| = |W_i|, the private property,
// domination, minimality, the definition of T and the bound on |T|. Returns a
// description of the first violation found. Quadratic time.
std::optional<std::string> find_chain_violation(const BipartiteGraph& graph, const DominatingChain& chain);

// W_1 ∪ S_1, an induced matching: every vertex has induced degree 1.
VertexSet case1_candidate(const DominatingChain& chain);

// Case thresholds c1, c2 are only used to label which case the asymptotic
// argument would pick; every case is attempted regardless.
struct AnalysisConfig {
  double c1 = 1.0 / 3.0 - 0.005;
  double c2 = 2.0 / 3.0 - 0.01;
  int threshold_exponent = 3;

  void validate() const;
  // k^threshold_exponent, saturating.
  std::int64_t degree_threshold(int k) const;
};

// T* = {v ∈ T: |N(v) ∩ W_{k-1}| >= k^threshold_exponent}
VertexSet select_T_star(const BipartiteGraph& graph, const DominatingChain& chain, int k,
                        const AnalysisConfig& config);

// Keeps each element of `pool` independently with probability 2^-p, using p
// fair bits per element. p = 0 returns the pool unchanged.
VertexSet sample_U(const VertexSet& pool, int p, Rng& rng);

// Members of t_base with |N(v) ∩ chosen| ≡ 1 (mod k).
VertexSet compute_T_U(const BipartiteGraph& graph, const VertexSet& t_base, const VertexSet& chosen, int k);

struct DyadicBucket {
  int p = 0;
  VertexSet members;                    // 2^p <= |N(v) ∩ W_{k-1}| < 2^{p+1}
  std::vector<std::size_t> bucket_sizes;  // indexed by exponent
};

// Splits t_rest by floor(log2 |N(v) ∩ dominators|) and returns the largest
// bucket (smallest exponent on ties). Empty t_rest gives nullopt. Each member
// of t_rest must have between 1 and k^threshold_exponent - 1 such neighbours.
std::optional<DyadicBucket> dyadic_bucket(const BipartiteGraph& graph, const VertexSet& dominators,
                                          const VertexSet& t_rest, int k, const AnalysisConfig& config);
std::optional<DyadicBucket> dyadic_bucket(const BipartiteGraph& graph, const DominatingChain& chain,
                                          const VertexSet& t_rest, int k, const AnalysisConfig& config);

// Private vertices that lift every u in `chosen` to |N(u) ∩ (t_u ∪ S)| ≡ 1
// (mod k). For each u the first t_u = (1 - |N(u) ∩ t_u|) mod k levels
// contribute their private vertex of u.
VertexSet fix_degrees(const BipartiteGraph& graph, const DominatingChain& chain, const VertexSet& chosen,
                      const VertexSet& t_u, int k);

enum class Mode { kSampled, kDerandomized };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& name);

struct FindOptions {
  Mode mode = Mode::kSampled;
  std::uint64_t seed = 0;
  int retries = 16;
  AnalysisConfig config{};
};

// One attempted case. For cases 2 and 3, subgraph = S ∪ U ∪ T_U.
struct CaseCandidate {
  bool attempted = false;
  bool verified = false;
  int p = 0;               // inclusion exponent
  VertexSet scored;        // T* for case 2, T' for case 3
  VertexSet chosen;        // U
  VertexSet t_u;
  VertexSet fixers;        // S
  VertexSet subgraph;
  std::size_t score = 0;   // |T_U ∩ scored|
  double expected_score = 0;
  int draws = 0;
};

struct ConstructionTrace {
  int k = 2;
  Mode mode = Mode::kSampled;
  std::uint64_t seed = 0;
  int retries = 0;
  int chosen_case = 1;
  int analysis_case = 1;       // the case the c1/c2 thresholds select
  std::vector<std::size_t> dominator_sizes;
  std::vector<std::size_t> private_sizes;
  VertexSet remainder;         // T
  VertexSet t_star;
  std::optional<DyadicBucket> bucket;
  std::array<CaseCandidate, 3> cases;

  const CaseCandidate& candidate(int case_id) const { return cases.at(static_cast<std::size_t>(case_id - 1)); }
  const CaseCandidate& chosen() const { return candidate(chosen_case); }
};

struct Construction {
  VertexSet subgraph;
  DominatingChain chain;
  ConstructionTrace trace;
};

// Builds the chain once, evaluates every applicable case and returns the
// largest candidate that verifies with residue 1 mod k. Never empty.
Construction find_mod_one_subgraph(const BipartiteGraph& graph, int k, const FindOptions& options = {});

}  // namespace moddeg
