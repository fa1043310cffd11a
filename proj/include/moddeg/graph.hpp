#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "moddeg/vertex_set.hpp"

namespace moddeg {

enum class GraphErrorKind {
  kMalformed,
  kOutOfRange,
  kSelfLoop,
  kDuplicateEdge,
  kNonBipartite,
  kIsolatedVertex,
};

class GraphError : public std::runtime_error {
 public:
  GraphError(GraphErrorKind kind, const std::string& what, std::optional<std::size_t> line = std::nullopt)
      : std::runtime_error(line ? "line " + std::to_string(*line) + ": " + what : what), kind_(kind), line_(line) {}

  GraphErrorKind kind() const { return kind_; }
  std::optional<std::size_t> line() const { return line_; }

 private:
  GraphErrorKind kind_;
  std::optional<std::size_t> line_;
};

using Edge = std::pair<Vertex, Vertex>;

struct BuildOptions {
  // When false a repeated edge is an error instead of a warning.
  bool dedupe_edges = true;
};

// Immutable bipartite graph. Ids 0..n1-1 form side 1 and n1..n1+n2-1 side 2,
// with n1 >= n2 always (the constructor relabels when the input has the larger
// side second). Every vertex has degree at least one.
class BipartiteGraph {
 public:
  // Edges use the input labelling: u in [0, n1), v in [n1, n1 + n2), either order.
  static BipartiteGraph from_labeled_edges(int n1, int n2, std::span<const Edge> edges,
                                           const BuildOptions& options = {},
                                           std::vector<std::string>* warnings = nullptr);

  // Edges over arbitrary non-negative ids; the vertex set is the ids that
  // appear, and the bipartition is found by 2-colouring.
  static BipartiteGraph from_unlabeled_edges(std::span<const std::pair<std::int64_t, std::int64_t>> edges,
                                             const BuildOptions& options = {},
                                             std::vector<std::string>* warnings = nullptr);

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  int order() const { return n1_ + n2_; }
  std::size_t edge_count() const { return edge_count_; }

  bool on_side1(Vertex v) const { return v < n1_; }
  VertexSet side1() const { return VertexSet::range(universe(), 0, n1_); }
  VertexSet side2() const { return VertexSet::range(universe(), n1_, order()); }
  VertexSet all() const { return VertexSet::full(universe()); }
  VertexSet empty_set() const { return VertexSet(universe()); }
  std::size_t universe() const { return static_cast<std::size_t>(order()); }

  const VertexSet& neighbors(Vertex v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
  std::span<const Vertex> neighbor_list(Vertex v) const { return lists_.at(static_cast<std::size_t>(v)); }
  int degree(Vertex v) const { return static_cast<int>(neighbor_list(v).size()); }
  bool adjacent(Vertex u, Vertex v) const { return neighbors(u).contains(v); }

  // |N(v) ∩ set|
  int degree_in(Vertex v, const VertexSet& set) const {
    return static_cast<int>(neighbors(v).intersection_size(set));
  }

  // Sorted (side-1, side-2) pairs.
  std::vector<Edge> edges() const;

  // Identifier each vertex carried in the source document.
  std::int64_t source_id(Vertex v) const { return source_ids_.at(static_cast<std::size_t>(v)); }

 private:
  BipartiteGraph() = default;
  static BipartiteGraph assemble(int n1, int n2, std::vector<Edge> edges, std::vector<std::int64_t> source_ids,
                                 const BuildOptions& options, std::vector<std::string>* warnings);

  int n1_ = 0;
  int n2_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<VertexSet> adjacency_;
  std::vector<std::vector<Vertex>> lists_;
  std::vector<std::int64_t> source_ids_;
};

struct ParseOptions {
  // Accept a header-less edge list over arbitrary ids.
  bool permissive = false;
  BuildOptions build{};
};

BipartiteGraph parse_graph(std::string_view text, const ParseOptions& options = {},
                           std::vector<std::string>* warnings = nullptr);

// Canonical labelled form: "n1 n2" followed by sorted edges.
std::string serialize_graph(const BipartiteGraph& graph);

// Target congruence deg ≡ r (mod q).
struct ResidueSpec {
  int r = 1;
  int q = 2;

  // Throws std::invalid_argument unless q >= 2 and 0 <= r < q.
  static ResidueSpec make(int r, int q);
};

struct ResidueCheck {
  bool ok = true;
  Vertex witness = kNoVertex;
  int witness_degree = 0;
  int witness_residue = 0;

  explicit operator bool() const { return ok; }
};

// True iff every v in `subgraph` has |N(v) ∩ subgraph| ≡ r (mod q). Empty
// sets pass.
ResidueCheck verify_residue(const BipartiteGraph& graph, const VertexSet& subgraph, const ResidueSpec& spec);

}  // namespace moddeg
