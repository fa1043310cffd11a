#include "moddeg/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "moddeg/construction.hpp"

namespace moddeg {

namespace {

enum class State : unsigned char { kUndecided, kIn, kOut };

class Search {
 public:
  Search(const BipartiteGraph& graph, const ResidueSpec& spec, std::uint64_t budget)
      : graph_(graph), r_(spec.r), q_(spec.q), budget_(budget), n_(graph.order()) {
    order_.resize(static_cast<std::size_t>(n_));
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](Vertex a, Vertex b) { return graph.degree(a) > graph.degree(b); });
    state_.assign(static_cast<std::size_t>(n_), State::kUndecided);
    in_count_.assign(static_cast<std::size_t>(n_), 0);
    open_count_.resize(static_cast<std::size_t>(n_));
    for (Vertex v = 0; v < n_; ++v) open_count_[static_cast<std::size_t>(v)] = graph.degree(v);
  }

  OracleResult run() {
    descend(0, 0);
    OracleResult result;
    result.value = best_;
    result.witness = VertexSet::of(graph_.universe(), best_members_);
    result.explored = explored_;
    result.timed_out = timed_out_;
    return result;
  }

 private:
  // An included vertex can still reach residue r if the gap to r fits in its
  // undecided neighbours.
  bool feasible(Vertex v) const {
    const auto i = static_cast<std::size_t>(v);
    const int gap = ((r_ - in_count_[i]) % q_ + q_) % q_;
    return gap <= open_count_[i];
  }

  bool decide(Vertex v, State choice) {
    state_[static_cast<std::size_t>(v)] = choice;
    bool ok = true;
    for (Vertex u : graph_.neighbor_list(v)) {
      const auto i = static_cast<std::size_t>(u);
      --open_count_[i];
      if (choice == State::kIn) ++in_count_[i];
      if (state_[i] == State::kIn && !feasible(u)) ok = false;
    }
    if (choice == State::kIn && !feasible(v)) ok = false;
    return ok;
  }

  void undo(Vertex v, State choice) {
    for (Vertex u : graph_.neighbor_list(v)) {
      const auto i = static_cast<std::size_t>(u);
      ++open_count_[i];
      if (choice == State::kIn) --in_count_[i];
    }
    state_[static_cast<std::size_t>(v)] = State::kUndecided;
  }

  void descend(int position, int chosen) {
    if (timed_out_) return;
    if (++explored_ > budget_) {
      timed_out_ = true;
      return;
    }
    if (chosen + (n_ - position) <= best_) return;
    if (position == n_) {
      best_ = chosen;
      best_members_.clear();
      for (Vertex v = 0; v < n_; ++v) {
        if (state_[static_cast<std::size_t>(v)] == State::kIn) best_members_.push_back(v);
      }
      return;
    }
    const Vertex v = order_[static_cast<std::size_t>(position)];
    for (State choice : {State::kIn, State::kOut}) {
      if (decide(v, choice)) descend(position + 1, chosen + (choice == State::kIn ? 1 : 0));
      undo(v, choice);
      if (timed_out_) return;
    }
  }

  const BipartiteGraph& graph_;
  int r_;
  int q_;
  std::uint64_t budget_;
  int n_;
  std::vector<Vertex> order_;
  std::vector<State> state_;
  std::vector<int> in_count_;
  std::vector<int> open_count_;
  int best_ = 0;
  std::vector<Vertex> best_members_;
  std::uint64_t explored_ = 0;
  bool timed_out_ = false;
};

}  // namespace

OracleResult exact_f(const BipartiteGraph& graph, const ResidueSpec& spec, std::uint64_t budget) {
  ResidueSpec::make(spec.r, spec.q);
  return Search(graph, spec, budget).run();
}

EmpiricalReport empirical_c(std::span<const BipartiteGraph> graphs, int k, std::uint64_t budget) {
  EmpiricalReport report;
  report.k = k;
  const auto spec = ResidueSpec::make(1, k);
  double exact_sum = 0;
  std::size_t exact_count = 0;
  report.min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto& graph = graphs[i];
    const auto oracle = exact_f(graph, spec, budget);
    const auto built = find_mod_one_subgraph(graph, k, {.mode = Mode::kDerandomized});
    EmpiricalEntry entry;
    entry.index = i;
    entry.order = graph.order();
    entry.exact = !oracle.timed_out;
    entry.construction_size = static_cast<int>(built.subgraph.size());
    entry.value = entry.exact ? oracle.value : std::max(oracle.value, entry.construction_size);
    entry.ratio = static_cast<double>(entry.value) / entry.order;
    if (entry.exact) {
      report.min_ratio = std::min(report.min_ratio, entry.ratio);
      report.max_ratio = std::max(report.max_ratio, entry.ratio);
      exact_sum += entry.ratio;
      ++exact_count;
    } else {
      ++report.inexact;
    }
    report.entries.push_back(entry);
  }
  if (exact_count == 0) {
    report.min_ratio = 0;
  } else {
    report.mean_ratio = exact_sum / static_cast<double>(exact_count);
  }
  return report;
}

}  // namespace moddeg
