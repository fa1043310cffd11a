#include "moddeg/trace_json.hpp"

namespace moddeg {

namespace {

using nlohmann::json;

json ids(const VertexSet& set) { return set.to_vector(); }

}  // namespace

json trace_to_json(const BipartiteGraph& graph, const Construction& construction, bool verbose) {
  const auto& trace = construction.trace;
  const auto& chosen = trace.chosen();
  json doc;
  doc["schema_version"] = kTraceSchemaVersion;
  doc["k"] = trace.k;
  doc["n"] = graph.order();
  doc["n1"] = graph.n1();
  doc["n2"] = graph.n2();
  doc["mode"] = to_string(trace.mode);
  doc["seed"] = trace.seed;
  doc["retries"] = trace.retries;
  doc["case"] = trace.chosen_case;
  doc["analysis_case"] = trace.analysis_case;
  doc["p"] = trace.bucket ? json(trace.bucket->p) : json(nullptr);

  json sizes;
  sizes["W"] = trace.dominator_sizes;
  sizes["S_levels"] = trace.private_sizes;
  sizes["T"] = trace.remainder.size();
  sizes["T_star"] = trace.t_star.size();
  sizes["T_prime"] = trace.bucket ? json(trace.bucket->members.size()) : json(nullptr);
  sizes["U"] = chosen.chosen.size();
  sizes["T_U"] = chosen.t_u.size();
  sizes["S"] = chosen.fixers.size();
  sizes["H"] = construction.subgraph.size();
  doc["sizes"] = sizes;
  if (trace.bucket) doc["bucket_sizes"] = trace.bucket->bucket_sizes;

  json candidates = json::array();
  for (int id = 1; id <= 3; ++id) {
    const auto& c = trace.candidate(id);
    json entry{{"case", id}, {"attempted", c.attempted}};
    if (c.attempted) {
      entry["verified"] = c.verified;
      entry["size"] = c.subgraph.size();
      if (id > 1) {
        entry["p"] = c.p;
        entry["scored"] = c.scored.size();
        entry["score"] = c.score;
        entry["expected_score"] = c.expected_score;
        entry["draws"] = c.draws;
      }
    }
    candidates.push_back(entry);
  }
  doc["candidates"] = candidates;

  if (verbose) {
    json sets;
    json levels = json::array();
    for (const auto& level : construction.chain.levels) {
      json pairs = json::array();
      for (auto [w, v] : level.private_map) pairs.push_back({w, v});
      levels.push_back({{"W", ids(level.dominators)}, {"S", ids(level.privates)}, {"private", pairs}});
    }
    sets["levels"] = levels;
    sets["T"] = ids(trace.remainder);
    sets["T_star"] = ids(trace.t_star);
    sets["T_prime"] = trace.bucket ? ids(trace.bucket->members) : json(nullptr);
    sets["U"] = ids(chosen.chosen);
    sets["T_U"] = ids(chosen.t_u);
    sets["S"] = ids(chosen.fixers);
    sets["H"] = ids(construction.subgraph);
    json source = json::array();
    for (Vertex v : construction.subgraph) source.push_back(graph.source_id(v));
    sets["H_source_ids"] = source;
    doc["sets"] = sets;
  }
  return doc;
}

}  // namespace moddeg
