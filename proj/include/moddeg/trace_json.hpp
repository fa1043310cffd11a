#pragma once

#include "json.hpp"

#include "moddeg/construction.hpp"
#include "moddeg/graph.hpp"

namespace moddeg {

inline constexpr int kTraceSchemaVersion = 1;

// Sizes always; with `verbose` also every set as a sorted id array (and the
// output's ids from the source document).
nlohmann::json trace_to_json(const BipartiteGraph& graph, const Construction& construction, bool verbose);

}  // namespace moddeg
