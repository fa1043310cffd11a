#include "moddeg/construction.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "moddeg/mixing.hpp"

namespace moddeg {

namespace {

Vertex lookup_private(const std::vector<std::pair<Vertex, Vertex>>& map, Vertex w) {
  auto it = std::lower_bound(map.begin(), map.end(), std::pair{w, std::numeric_limits<Vertex>::min()});
  return it != map.end() && it->first == w ? it->second : kNoVertex;
}

std::string describe_level(int i) { return "level " + std::to_string(i) + ": "; }

}  // namespace

Vertex DominatingSet::private_of(Vertex w) const { return lookup_private(private_map, w); }

VertexSet DominatingSet::privates(std::size_t universe) const {
  VertexSet set(universe);
  for (auto [w, v] : private_map) set.insert(v);
  return set;
}

Vertex ChainLevel::private_of(Vertex w) const { return lookup_private(private_map, w); }

DominatingSet minimal_dominating_set(const BipartiteGraph& graph, const VertexSet& targets,
                                     const VertexSet& candidates) {
  std::vector<int> cover(graph.universe(), 0);
  for (Vertex v : targets) {
    cover[static_cast<std::size_t>(v)] = graph.degree_in(v, candidates);
    if (cover[static_cast<std::size_t>(v)] == 0) {
      throw DominationError("target " + std::to_string(v) + " has no neighbour among the candidates");
    }
  }

  DominatingSet result{candidates, {}};
  for (Vertex w : candidates) {
    const auto nbrs = graph.neighbor_list(w);
    const bool needed = std::any_of(nbrs.begin(), nbrs.end(), [&](Vertex v) {
      return targets.contains(v) && cover[static_cast<std::size_t>(v)] == 1;
    });
    if (needed) continue;
    result.dominators.erase(w);
    for (Vertex v : nbrs) {
      if (targets.contains(v)) --cover[static_cast<std::size_t>(v)];
    }
  }

  // Cover counts only fell after a dominator was kept, so the target that
  // forced it to stay is still private to it.
  for (Vertex w : result.dominators) {
    const auto nbrs = graph.neighbor_list(w);
    auto it = std::find_if(nbrs.begin(), nbrs.end(), [&](Vertex v) {
      return targets.contains(v) && cover[static_cast<std::size_t>(v)] == 1;
    });
    if (it == nbrs.end()) throw std::logic_error("dominator " + std::to_string(w) + " lost its private neighbour");
    result.private_map.emplace_back(w, *it);
  }
  return result;
}

DominatingChain build_chain(const BipartiteGraph& graph, int k) {
  if (k < 2) throw std::invalid_argument("modulus k must be at least 2, got " + std::to_string(k));
  DominatingChain chain;
  chain.k = k;
  VertexSet targets = graph.side1();
  VertexSet candidates = graph.side2();
  for (int i = 1; i <= k - 1; ++i) {
    DominatingSet level;
    try {
      level = minimal_dominating_set(graph, targets, candidates);
    } catch (const DominationError& e) {
      // W_{i-1} dominated a superset of the current targets.
      throw std::logic_error(describe_level(i) + e.what());
    }
    auto privates = level.privates(graph.universe());
    targets -= privates;
    candidates = level.dominators;
    chain.levels.push_back({std::move(level.dominators), std::move(privates), std::move(level.private_map)});
  }
  chain.remainder = std::move(targets);
  return chain;
}

std::optional<std::string> find_chain_violation(const BipartiteGraph& graph, const DominatingChain& chain) {
  if (chain.k < 2) return "modulus below 2";
  if (chain.levels.size() != static_cast<std::size_t>(chain.k - 1)) {
    return "expected " + std::to_string(chain.k - 1) + " levels, found " + std::to_string(chain.levels.size());
  }
  const auto side1 = graph.side1();
  const auto side2 = graph.side2();
  VertexSet used(graph.universe());
  const VertexSet* previous = &side2;

  for (int i = 1; i <= chain.k - 1; ++i) {
    const auto& level = chain.level(i);
    const auto where = describe_level(i);
    if (!level.dominators.is_subset_of(*previous)) return where + "W_i not nested in the previous level";
    if (!level.privates.is_subset_of(side1)) return where + "S_i leaves side 1";
    if (level.privates.intersects(used)) return where + "S_i meets an earlier S_j";
    if (level.privates.size() != level.dominators.size()) return where + "|S_i| != |W_i|";
    if (level.private_map.size() != level.dominators.size()) return where + "private map size differs from |W_i|";

    VertexSet mapped_keys(graph.universe());
    VertexSet mapped_values(graph.universe());
    for (auto [w, v] : level.private_map) {
      mapped_keys.insert(w);
      mapped_values.insert(v);
      if (!graph.adjacent(v, w)) return where + "private vertex " + std::to_string(v) + " not adjacent to " + std::to_string(w);
      if (graph.degree_in(v, level.dominators) != 1) {
        return where + "vertex " + std::to_string(v) + " is not private to " + std::to_string(w);
      }
    }
    if (!(mapped_keys == level.dominators)) return where + "private map keys differ from W_i";
    if (!(mapped_values == level.privates)) return where + "private map values differ from S_i";

    const auto targets = side1 - used;
    if (!level.privates.is_subset_of(targets)) return where + "S_i not inside the level's targets";
    for (Vertex v : targets) {
      if (graph.degree_in(v, level.dominators) == 0) {
        return where + "target " + std::to_string(v) + " undominated";
      }
    }
    for (Vertex w : level.dominators) {
      auto without = level.dominators;
      without.erase(w);
      const bool still_dominates =
          std::all_of(targets.begin(), targets.end(), [&](Vertex v) { return graph.degree_in(v, without) > 0; });
      if (still_dominates) return where + "W_i not minimal, " + std::to_string(w) + " is redundant";
    }
    used |= level.privates;
    previous = &level.dominators;
  }

  if (!(chain.remainder == side1 - used)) return "T differs from V_1 minus the private sets";
  const auto bound = static_cast<long long>(graph.n1()) -
                     static_cast<long long>(chain.k - 1) * static_cast<long long>(chain.first_dominators().size());
  if (static_cast<long long>(chain.remainder.size()) < bound) return "|T| < |V_1| - (k-1)|W_1|";
  return std::nullopt;
}

VertexSet case1_candidate(const DominatingChain& chain) {
  return chain.first_dominators() | chain.level(1).privates;
}

void AnalysisConfig::validate() const {
  if (!(c1 > 0) || !(c2 > 0) || !(c1 + c2 < 1)) {
    throw std::invalid_argument("analysis thresholds need 0 < c1, 0 < c2, c1 + c2 < 1");
  }
  if (threshold_exponent < 0) throw std::invalid_argument("threshold exponent must be non-negative");
}

std::int64_t AnalysisConfig::degree_threshold(int k) const {
  constexpr auto cap = std::numeric_limits<std::int64_t>::max() / 4;
  std::int64_t value = 1;
  for (int i = 0; i < threshold_exponent; ++i) {
    if (value > cap / std::max(k, 1)) return cap;
    value *= k;
  }
  return value;
}

VertexSet select_T_star(const BipartiteGraph& graph, const DominatingChain& chain, int k,
                        const AnalysisConfig& config) {
  const auto threshold = config.degree_threshold(k);
  VertexSet result(graph.universe());
  for (Vertex v : chain.remainder) {
    if (graph.degree_in(v, chain.last_dominators()) >= threshold) result.insert(v);
  }
  return result;
}

VertexSet sample_U(const VertexSet& pool, int p, Rng& rng) {
  if (p < 0) throw std::invalid_argument("inclusion exponent must be non-negative");
  if (p == 0) return pool;
  VertexSet chosen(pool.universe());
  for (Vertex v : pool) {
    bool keep = true;
    for (int remaining = p; remaining > 0 && keep; remaining -= 64) {
      const int bits = std::min(remaining, 64);
      const auto mask = bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
      keep = (rng() & mask) == 0;
    }
    if (keep) chosen.insert(v);
  }
  return chosen;
}

VertexSet compute_T_U(const BipartiteGraph& graph, const VertexSet& t_base, const VertexSet& chosen, int k) {
  VertexSet result(graph.universe());
  for (Vertex v : t_base) {
    if (graph.degree_in(v, chosen) % k == 1) result.insert(v);
  }
  return result;
}

std::optional<DyadicBucket> dyadic_bucket(const BipartiteGraph& graph, const VertexSet& dominators,
                                          const VertexSet& t_rest, int k, const AnalysisConfig& config) {
  if (t_rest.empty()) return std::nullopt;
  const auto threshold = config.degree_threshold(k);
  std::vector<int> exponent(graph.universe(), -1);
  DyadicBucket bucket;
  for (Vertex v : t_rest) {
    const int d = graph.degree_in(v, dominators);
    if (d < 1 || d >= threshold) {
      throw std::invalid_argument("vertex " + std::to_string(v) + " has " + std::to_string(d) +
                                  " dominator neighbours, outside [1, k^e)");
    }
    const int p = std::bit_width(static_cast<unsigned>(d)) - 1;
    exponent[static_cast<std::size_t>(v)] = p;
    if (bucket.bucket_sizes.size() <= static_cast<std::size_t>(p)) bucket.bucket_sizes.resize(static_cast<std::size_t>(p) + 1, 0);
    ++bucket.bucket_sizes[static_cast<std::size_t>(p)];
  }
  const auto best = std::max_element(bucket.bucket_sizes.begin(), bucket.bucket_sizes.end());
  bucket.p = static_cast<int>(best - bucket.bucket_sizes.begin());
  bucket.members = VertexSet(graph.universe());
  for (Vertex v : t_rest) {
    if (exponent[static_cast<std::size_t>(v)] == bucket.p) bucket.members.insert(v);
  }
  return bucket;
}

std::optional<DyadicBucket> dyadic_bucket(const BipartiteGraph& graph, const DominatingChain& chain,
                                          const VertexSet& t_rest, int k, const AnalysisConfig& config) {
  return dyadic_bucket(graph, chain.last_dominators(), t_rest, k, config);
}

VertexSet fix_degrees(const BipartiteGraph& graph, const DominatingChain& chain, const VertexSet& chosen,
                      const VertexSet& t_u, int k) {
  if (k != chain.k) throw std::invalid_argument("modulus differs from the chain's");
  VertexSet fixers(graph.universe());
  for (Vertex u : chosen) {
    if (!chain.last_dominators().contains(u)) {
      throw std::invalid_argument("vertex " + std::to_string(u) + " is not in W_{k-1}");
    }
    const int have = graph.degree_in(u, t_u);
    const int missing = ((1 - have) % k + k) % k;
    if (missing > k - 1) throw std::logic_error("residue out of range");
    for (int i = 1; i <= missing; ++i) {
      const Vertex v = chain.level(i).private_of(u);
      if (v == kNoVertex) throw std::logic_error("no private vertex for " + std::to_string(u) + " at level " + std::to_string(i));
      fixers.insert(v);
    }
  }
  return fixers;
}

std::string to_string(Mode mode) { return mode == Mode::kSampled ? "sampled" : "derandomized"; }

Mode mode_from_string(const std::string& name) {
  if (name == "sampled") return Mode::kSampled;
  if (name == "derandomized") return Mode::kDerandomized;
  throw std::invalid_argument("unknown mode '" + name + "' (expected sampled or derandomized)");
}

namespace {

struct Draw {
  VertexSet chosen;
  VertexSet t_u;
  VertexSet fixers;
  VertexSet subgraph;
  std::size_t score = 0;
};

Draw complete_draw(const BipartiteGraph& graph, const DominatingChain& chain, VertexSet chosen,
                   const VertexSet& scored, int k) {
  Draw draw;
  draw.t_u = compute_T_U(graph, chain.remainder, chosen, k);
  draw.fixers = fix_degrees(graph, chain, chosen, draw.t_u, k);
  draw.subgraph = draw.fixers | chosen | draw.t_u;
  draw.score = draw.t_u.intersection_size(scored);
  draw.chosen = std::move(chosen);
  return draw;
}

CaseCandidate run_case(const BipartiteGraph& graph, const DominatingChain& chain, int case_id, int p, VertexSet scored,
                       const FindOptions& options) {
  const int k = chain.k;
  const auto& pool = chain.last_dominators();
  CaseCandidate candidate;
  candidate.attempted = true;
  candidate.p = p;
  candidate.expected_score = expected_hits(graph, pool, scored, k, p);

  std::optional<Draw> best;
  auto consider = [&](Draw draw) {
    ++candidate.draws;
    if (!best || draw.t_u.size() > best->t_u.size() ||
        (draw.t_u.size() == best->t_u.size() && draw.subgraph.size() > best->subgraph.size())) {
      best = std::move(draw);
    }
  };

  if (p == 0) {
    consider(complete_draw(graph, chain, pool, scored, k));
  } else if (options.mode == Mode::kDerandomized) {
    consider(complete_draw(graph, chain, derandomize_U(graph, pool, scored, k, p).chosen, scored, k));
  } else {
    for (int attempt = 0; attempt < options.retries; ++attempt) {
      Rng rng(derive_seed(options.seed, {static_cast<std::uint64_t>(case_id), static_cast<std::uint64_t>(attempt)}));
      consider(complete_draw(graph, chain, sample_U(pool, p, rng), scored, k));
    }
  }

  candidate.scored = std::move(scored);
  candidate.chosen = std::move(best->chosen);
  candidate.t_u = std::move(best->t_u);
  candidate.fixers = std::move(best->fixers);
  candidate.subgraph = std::move(best->subgraph);
  candidate.score = best->score;
  candidate.verified = !candidate.subgraph.empty() && verify_residue(graph, candidate.subgraph, {1, k}).ok;
  return candidate;
}

}  // namespace

Construction find_mod_one_subgraph(const BipartiteGraph& graph, int k, const FindOptions& options) {
  if (k < 2) throw std::invalid_argument("modulus k must be at least 2, got " + std::to_string(k));
  if (options.retries < 1) throw std::invalid_argument("retries must be at least 1");
  options.config.validate();

  Construction result;
  result.chain = build_chain(graph, k);
  const auto& chain = result.chain;
  auto& trace = result.trace;
  trace.k = k;
  trace.mode = options.mode;
  trace.seed = options.seed;
  trace.retries = options.mode == Mode::kSampled ? options.retries : 0;
  for (const auto& level : chain.levels) {
    trace.dominator_sizes.push_back(level.dominators.size());
    trace.private_sizes.push_back(level.privates.size());
  }
  trace.remainder = chain.remainder;

  auto& matching = trace.cases[0];
  matching.attempted = true;
  matching.chosen = chain.first_dominators();
  matching.fixers = chain.level(1).privates;
  matching.subgraph = case1_candidate(chain);
  matching.verified = !matching.subgraph.empty() && verify_residue(graph, matching.subgraph, {1, k}).ok;
  matching.draws = 1;
  if (!matching.verified) throw std::logic_error("W_1 ∪ S_1 failed to induce a matching");

  trace.t_star = select_T_star(graph, chain, k, options.config);
  if (!trace.t_star.empty()) trace.cases[1] = run_case(graph, chain, 2, 1, trace.t_star, options);

  trace.bucket = dyadic_bucket(graph, chain, chain.remainder - trace.t_star, k, options.config);
  if (trace.bucket) trace.cases[2] = run_case(graph, chain, 3, trace.bucket->p, trace.bucket->members, options);

  trace.chosen_case = 1;
  for (int id = 2; id <= 3; ++id) {
    const auto& c = trace.candidate(id);
    if (c.verified && c.subgraph.size() > trace.chosen().subgraph.size()) trace.chosen_case = id;
  }

  const double v1 = graph.n1();
  const auto& config = options.config;
  if (static_cast<double>(chain.first_dominators().size()) >= config.c1 * v1 / k) {
    trace.analysis_case = 1;
  } else if (static_cast<double>(trace.t_star.size()) >= config.c2 * v1) {
    trace.analysis_case = 2;
  } else {
    trace.analysis_case = 3;
  }

  result.subgraph = trace.chosen().subgraph;
  return result;
}

}  // namespace moddeg
