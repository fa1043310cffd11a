#include "moddeg/mixing.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace moddeg {

namespace {

void check_parameters(std::int64_t n, int k, int p, int min_p = 1) {
  if (n < 0) throw std::invalid_argument("number of summands must be non-negative");
  if (k < 2) throw std::invalid_argument("modulus must be at least 2");
  if (p < min_p || p > 62) throw std::invalid_argument(fmt::format("inclusion exponent must lie in [{}, 62]", min_p));
}

double inclusion_probability(int p) { return std::ldexp(1.0, -p); }

// One step of the residue walk: stay with 1 - alpha, advance with alpha.
void mix_step(std::vector<double>& state, std::vector<double>& scratch, double alpha) {
  const auto k = state.size();
  for (std::size_t r = 0; r < k; ++r) {
    scratch[r] = (1.0 - alpha) * state[r] + alpha * state[(r + k - 1) % k];
  }
  state.swap(scratch);
}

}  // namespace

double ResidueDistribution::uniformity_gap() const {
  double gap = 0;
  for (double d : deviations) gap = std::max(gap, std::abs(d));
  return gap;
}

ResidueDistribution residue_distribution(std::int64_t n, int k, int p) {
  check_parameters(n, k, p);
  const double alpha = inclusion_probability(p);
  const auto size = static_cast<std::size_t>(k);
  const double uniform = 1.0 / k;

  std::vector<double> probs(size, 0.0);
  probs[0] = 1.0;
  std::vector<double> deviations(size, -uniform);
  deviations[0] = 1.0 - uniform;
  std::vector<double> scratch(size);

  for (std::int64_t step = 0; step < n; ++step) {
    mix_step(probs, scratch, alpha);
    mix_step(deviations, scratch, alpha);
    double mean = 0;
    for (double d : deviations) mean += d;
    mean /= k;
    for (double& d : deviations) d -= mean;
  }
  return {n, k, p, std::move(probs), std::move(deviations)};
}

ResidueTable::ResidueTable(int max_n, int k, int p) : max_n_(max_n), k_(k), p_(p) {
  check_parameters(max_n, k, p, 0);
  const double alpha = inclusion_probability(p);
  const auto width = static_cast<std::size_t>(k);
  rows_.assign((static_cast<std::size_t>(max_n) + 1) * width, 0.0);
  rows_[0] = 1.0;
  for (std::size_t m = 1; m <= static_cast<std::size_t>(max_n); ++m) {
    const double* prev = &rows_[(m - 1) * width];
    double* row = &rows_[m * width];
    for (std::size_t r = 0; r < width; ++r) {
      row[r] = (1.0 - alpha) * prev[r] + alpha * prev[(r + width - 1) % width];
    }
  }
}

double fourier_gap_bound(std::int64_t n, int k, int p) {
  check_parameters(n, k, p);
  const double alpha = inclusion_probability(p);
  double total = 0;
  for (int j = 1; j < k; ++j) {
    const double angle = 2.0 * std::numbers::pi * j / k;
    // |1 - a + a·e^{iθ}|² = (1-a)² + a² + 2a(1-a)cos θ
    const double squared =
        std::max(0.0, (1 - alpha) * (1 - alpha) + alpha * alpha + 2 * alpha * (1 - alpha) * std::cos(angle));
    total += std::pow(std::sqrt(squared), static_cast<double>(n));
  }
  return total / k;
}

PropositionReport evaluate_mod_one(int k, std::int64_t n) {
  const auto dist = residue_distribution(n, k, 1);
  PropositionReport report;
  report.k = k;
  report.n = n;
  report.probability = dist[1];
  report.target = 1.0 / k;
  report.ratio = report.probability / report.target;
  report.margin = std::abs(dist.deviations[1]);
  report.fourier_bound = fourier_gap_bound(n, k, 1);
  // The deviation carries relative error of roughly n epsilons.
  const double slack = 1.0 + 64.0 * static_cast<double>(n + 1) * std::numeric_limits<double>::epsilon();
  report.passes = report.ratio >= kPropositionRatio && report.margin <= report.fourier_bound * slack;
  return report;
}

PropositionReport check_proposition(int k, int threshold_exponent) {
  if (k < 2) throw std::invalid_argument("modulus must be at least 2");
  if (threshold_exponent < 0) throw std::invalid_argument("threshold exponent must be non-negative");
  std::int64_t n = 1;
  for (int i = 0; i < threshold_exponent; ++i) {
    n *= k;
    if (n > 500'000'000) throw std::invalid_argument("k^threshold_exponent too large to evaluate");
  }
  return evaluate_mod_one(k, n);
}

std::string proposition_table(int k_max, int threshold_exponent, bool csv) {
  std::string out;
  if (csv) {
    out += "# schema_version,1\n";
    out += "k,length,n,p_mod_one,one_over_k,ratio,fourier_bound,passes\n";
  } else {
    out += fmt::format("{:>4} {:>10} {:>10} {:>14} {:>10} {:>10} {:>12} {}\n", "k", "length", "n", "P(sum=1 mod k)",
                       "1/k", "ratio", "fourier", "ok");
  }
  auto emit = [&](const PropositionReport& row, const std::string& length, bool gated) {
    const std::string verdict = gated ? (row.passes ? "yes" : "no") : "-";
    if (csv) {
      out += fmt::format("{},{},{},{:.12f},{:.12f},{:.9f},{:.6e},{}\n", row.k, length, row.n, row.probability,
                         row.target, row.ratio, row.fourier_bound, verdict);
    } else {
      out += fmt::format("{:>4} {:>10} {:>10} {:>14.10f} {:>10.6f} {:>10.6f} {:>12.4e} {}\n", row.k, length, row.n,
                         row.probability, row.target, row.ratio, row.fourier_bound, verdict);
    }
  };
  for (int k = 2; k <= k_max; ++k) {
    emit(check_proposition(k, threshold_exponent), fmt::format("k^{}", threshold_exponent), true);
    const auto short_n = static_cast<std::int64_t>(std::ceil(k * k * std::log(static_cast<double>(k))));
    emit(evaluate_mod_one(k, short_n), "k^2 ln k", false);
  }
  return out;
}

double expected_hits(const BipartiteGraph& graph, const VertexSet& pool, const VertexSet& scored, int k, int p) {
  int max_m = 0;
  for (Vertex v : scored) max_m = std::max(max_m, graph.degree_in(v, pool));
  const ResidueTable table(max_m, k, p);
  double total = 0;
  for (Vertex v : scored) total += table.probability(graph.degree_in(v, pool), 1 % k);
  return total;
}

Derandomized derandomize_U(const BipartiteGraph& graph, const VertexSet& pool, const VertexSet& scored, int k, int p,
                           bool record_steps) {
  if (k < 2) throw std::invalid_argument("modulus must be at least 2");
  const auto n = graph.universe();
  // Per scored vertex: undecided pool neighbours and the residue of the
  // included ones.
  std::vector<int> undecided(n, 0);
  std::vector<int> residue(n, 0);
  int max_m = 0;
  for (Vertex v : scored) {
    undecided[static_cast<std::size_t>(v)] = graph.degree_in(v, pool);
    max_m = std::max(max_m, undecided[static_cast<std::size_t>(v)]);
  }
  const ResidueTable table(max_m, k, p);
  auto chance = [&](int m, int a) { return table.probability(m, ((1 - a) % k + k) % k); };

  Derandomized result;
  result.chosen = VertexSet(n);
  double expectation = 0;
  for (Vertex v : scored) expectation += chance(undecided[static_cast<std::size_t>(v)], 0);
  result.initial_expectation = expectation;

  for (Vertex w : pool) {
    double if_excluded = expectation;
    double if_included = expectation;
    for (Vertex v : graph.neighbor_list(w)) {
      if (!scored.contains(v)) continue;
      const auto m = undecided[static_cast<std::size_t>(v)];
      const auto a = residue[static_cast<std::size_t>(v)];
      const double now = chance(m, a);
      if_excluded += chance(m - 1, a) - now;
      if_included += chance(m - 1, (a + 1) % k) - now;
    }
    const bool include = if_included > if_excluded;
    if (record_steps) result.steps.push_back({w, expectation, if_excluded, if_included, include});
    for (Vertex v : graph.neighbor_list(w)) {
      if (!scored.contains(v)) continue;
      --undecided[static_cast<std::size_t>(v)];
      if (include) residue[static_cast<std::size_t>(v)] = (residue[static_cast<std::size_t>(v)] + 1) % k;
    }
    if (include) result.chosen.insert(w);
    expectation = include ? if_included : if_excluded;
  }

  for (Vertex v : scored) {
    if (graph.degree_in(v, result.chosen) % k == 1) ++result.hits;
  }
  return result;
}

}  // namespace moddeg
