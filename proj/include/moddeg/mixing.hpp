#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "moddeg/graph.hpp"
#include "moddeg/vertex_set.hpp"

namespace moddeg {

// Distribution of (X_1 + ... + X_n) mod k for i.i.d. X_i ~ Bernoulli(2^-p).
struct ResidueDistribution {
  std::int64_t n = 0;
  int k = 2;
  int p = 1;
  std::vector<double> probs;
  // probs[r] - 1/k, carried separately so that tiny deviations keep full
  // relative precision instead of drowning in the rounding of probs.
  std::vector<double> deviations;

  double operator[](int residue) const { return probs.at(static_cast<std::size_t>(residue)); }
  // max_r |P(≡ r) - 1/k|
  double uniformity_gap() const;
};

// Dynamic program over residue classes, n steps of k updates each. Rounding
// error in probs is at most about n·k machine epsilons per entry. The
// deviation vector runs the same recurrence minus the uniform fixed point,
// re-centred to zero sum each step, so its error is relative (about n
// epsilons of its own magnitude).
ResidueDistribution residue_distribution(std::int64_t n, int k, int p);

// Rows m = 0..max_n of residue_distribution(m, k, p), built in one pass.
// p = 0 is allowed here and makes every row a point mass at m mod k.
class ResidueTable {
 public:
  ResidueTable(int max_n, int k, int p);

  int k() const { return k_; }
  int p() const { return p_; }
  int max_n() const { return max_n_; }
  // P(Bin(m, 2^-p) ≡ residue mod k)
  double probability(int m, int residue) const {
    return rows_[static_cast<std::size_t>(m) * static_cast<std::size_t>(k_) + static_cast<std::size_t>(residue)];
  }

 private:
  int max_n_;
  int k_;
  int p_;
  std::vector<double> rows_;
};

// (1/k)·Σ_{j=1}^{k-1} |1 - 2^-p + 2^-p·exp(2πij/k)|^n, an upper bound on
// max_r |P(≡ r) - 1/k|.
double fourier_gap_bound(std::int64_t n, int k, int p);

struct PropositionReport {
  int k = 2;
  std::int64_t n = 0;
  double probability = 0;  // P(Σ X_i ≡ 1 mod k), fair coins
  double target = 0;       // 1/k
  double ratio = 0;        // probability / target
  double margin = 0;       // |probability - target|
  double fourier_bound = 0;
  bool passes = false;     // ratio >= kPropositionRatio and margin <= fourier_bound
};

inline constexpr double kPropositionRatio = 0.95;

// Evaluates fair-coin sums of length n = k^threshold_exponent.
PropositionReport check_proposition(int k, int threshold_exponent = 3);
// Same quantities at an explicit length.
PropositionReport evaluate_mod_one(int k, std::int64_t n);

// Rows for k = 2..k_max at n = k^threshold_exponent and at n = ceil(k² ln k).
std::string proposition_table(int k_max, int threshold_exponent, bool csv);

// A priori E|T_U ∩ scored| when each element of `pool` joins U independently
// with probability 2^-p, where T_U = {v : |N(v) ∩ U| ≡ 1 mod k}.
double expected_hits(const BipartiteGraph& graph, const VertexSet& pool, const VertexSet& scored, int k, int p);

struct DerandomizationStep {
  Vertex element = kNoVertex;
  double expectation = 0;    // before deciding `element`
  double if_excluded = 0;
  double if_included = 0;
  bool included = false;
};

struct Derandomized {
  VertexSet chosen;
  double initial_expectation = 0;
  std::size_t hits = 0;  // |T_U ∩ scored| for the chosen U
  std::vector<DerandomizationStep> steps;
};

// Method of conditional expectations over the elements of `pool` in
// increasing id order. Ties exclude. The result satisfies
// hits >= initial_expectation up to rounding.
Derandomized derandomize_U(const BipartiteGraph& graph, const VertexSet& pool, const VertexSet& scored, int k, int p,
                           bool record_steps = false);

}  // namespace moddeg
