#include "moddeg/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <sstream>

namespace moddeg {

namespace {

std::string edge_text(std::int64_t u, std::int64_t v) { return std::to_string(u) + " " + std::to_string(v); }

// Sorts, removes repeats, and reports them.
void dedupe(std::vector<Edge>& edges, const BuildOptions& options, std::vector<std::string>* warnings,
            const std::vector<std::int64_t>& source_ids) {
  std::sort(edges.begin(), edges.end());
  auto duplicate = std::adjacent_find(edges.begin(), edges.end());
  while (duplicate != edges.end()) {
    const auto message = "duplicate edge " + edge_text(source_ids[static_cast<std::size_t>(duplicate->first)],
                                                       source_ids[static_cast<std::size_t>(duplicate->second)]);
    if (!options.dedupe_edges) throw GraphError(GraphErrorKind::kDuplicateEdge, message);
    if (warnings != nullptr) warnings->push_back(message + " removed");
    duplicate = std::adjacent_find(std::next(duplicate), edges.end());
  }
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

std::optional<std::int64_t> parse_int(std::string_view token) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

// Splits a line into whitespace-separated tokens.
std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

struct NumberedPair {
  std::int64_t a;
  std::int64_t b;
  std::size_t line;
};

// Every data line must hold exactly two integers.
std::vector<NumberedPair> read_pairs(std::string_view text) {
  std::vector<NumberedPair> pairs;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto stop = text.find('\n', start);
    if (stop == std::string_view::npos) stop = text.size();
    auto line = text.substr(start, stop - start);
    ++line_no;
    start = stop + 1;
    auto parts = tokens(line);
    if (parts.empty() || parts.front().front() == '#') continue;
    if (parts.size() != 2) {
      throw GraphError(GraphErrorKind::kMalformed, "expected two integers, got '" + std::string(line) + "'", line_no);
    }
    auto a = parse_int(parts[0]);
    auto b = parse_int(parts[1]);
    if (!a || !b) {
      throw GraphError(GraphErrorKind::kMalformed, "expected two integers, got '" + std::string(line) + "'", line_no);
    }
    pairs.push_back({*a, *b, line_no});
  }
  return pairs;
}

}  // namespace

BipartiteGraph BipartiteGraph::assemble(int n1, int n2, std::vector<Edge> edges, std::vector<std::int64_t> source_ids,
                                        const BuildOptions& options, std::vector<std::string>* warnings) {
  if (n1 < 0 || n2 < 0) throw GraphError(GraphErrorKind::kMalformed, "negative side size");
  if (n1 + n2 == 0) throw GraphError(GraphErrorKind::kMalformed, "graph has no vertices");
  const int n = n1 + n2;

  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw GraphError(GraphErrorKind::kOutOfRange, "edge " + edge_text(u, v) + " outside vertex range 0.." +
                                                        std::to_string(n - 1));
    }
    if (u == v) throw GraphError(GraphErrorKind::kSelfLoop, "self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (v < n1 || u >= n1) {
      throw GraphError(GraphErrorKind::kNonBipartite, "edge " + edge_text(source_ids[static_cast<std::size_t>(u)],
                                                                          source_ids[static_cast<std::size_t>(v)]) +
                                                          " joins two vertices on the same side");
    }
  }
  dedupe(edges, options, warnings, source_ids);

  // Larger side first; on a tie the side holding vertex 0 stays first.
  if (n2 > n1) {
    auto relabel = [n1, n2](Vertex v) { return v < n1 ? v + n2 : v - n1; };
    std::vector<std::int64_t> relabeled_ids(source_ids.size());
    for (Vertex v = 0; v < n; ++v) relabeled_ids[static_cast<std::size_t>(relabel(v))] = source_ids[static_cast<std::size_t>(v)];
    source_ids = std::move(relabeled_ids);
    for (auto& [u, v] : edges) {
      auto a = relabel(u);
      auto b = relabel(v);
      u = std::min(a, b);
      v = std::max(a, b);
    }
    std::sort(edges.begin(), edges.end());
    std::swap(n1, n2);
  }

  BipartiteGraph graph;
  graph.n1_ = n1;
  graph.n2_ = n2;
  graph.edge_count_ = edges.size();
  graph.adjacency_.assign(static_cast<std::size_t>(n), VertexSet(static_cast<std::size_t>(n)));
  graph.lists_.assign(static_cast<std::size_t>(n), {});
  graph.source_ids_ = std::move(source_ids);
  for (auto [u, v] : edges) {
    graph.adjacency_[static_cast<std::size_t>(u)].insert(v);
    graph.adjacency_[static_cast<std::size_t>(v)].insert(u);
  }
  for (Vertex v = 0; v < n; ++v) {
    auto& list = graph.lists_[static_cast<std::size_t>(v)];
    list = graph.adjacency_[static_cast<std::size_t>(v)].to_vector();
    if (list.empty()) {
      throw GraphError(GraphErrorKind::kIsolatedVertex,
                       "vertex " + std::to_string(graph.source_ids_[static_cast<std::size_t>(v)]) + " is isolated");
    }
  }
  return graph;
}

BipartiteGraph BipartiteGraph::from_labeled_edges(int n1, int n2, std::span<const Edge> edges,
                                                  const BuildOptions& options, std::vector<std::string>* warnings) {
  std::vector<std::int64_t> ids(static_cast<std::size_t>(std::max(0, n1 + n2)));
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<std::int64_t>(i);
  return assemble(n1, n2, {edges.begin(), edges.end()}, std::move(ids), options, warnings);
}

BipartiteGraph BipartiteGraph::from_unlabeled_edges(std::span<const std::pair<std::int64_t, std::int64_t>> edges,
                                                    const BuildOptions& options, std::vector<std::string>* warnings) {
  std::vector<std::int64_t> ids;
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0) throw GraphError(GraphErrorKind::kOutOfRange, "negative vertex id in edge " + edge_text(a, b));
    if (a == b) throw GraphError(GraphErrorKind::kSelfLoop, "self-loop at vertex " + std::to_string(a));
    ids.push_back(a);
    ids.push_back(b);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  const auto n = ids.size();
  auto dense = [&ids](std::int64_t id) {
    return static_cast<Vertex>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };

  std::vector<std::vector<Vertex>> adj(n);
  for (auto [a, b] : edges) {
    adj[static_cast<std::size_t>(dense(a))].push_back(dense(b));
    adj[static_cast<std::size_t>(dense(b))].push_back(dense(a));
  }

  // Breadth-first 2-colouring; each component's smallest id gets colour 0.
  std::vector<int> colour(n, -1);
  for (std::size_t root = 0; root < n; ++root) {
    if (colour[root] != -1) continue;
    colour[root] = 0;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      for (Vertex w : adj[v]) {
        auto wi = static_cast<std::size_t>(w);
        if (colour[wi] == -1) {
          colour[wi] = 1 - colour[v];
          queue.push_back(wi);
        } else if (colour[wi] == colour[v]) {
          throw GraphError(GraphErrorKind::kNonBipartite,
                           "odd cycle through edge " + edge_text(ids[v], ids[wi]) + "; graph is not bipartite");
        }
      }
    }
  }

  const auto zeros = static_cast<int>(std::count(colour.begin(), colour.end(), 0));
  const auto ones = static_cast<int>(n) - zeros;
  const int first_colour = zeros >= ones ? 0 : 1;
  std::vector<Vertex> label(n);
  std::vector<std::int64_t> source(n);
  Vertex next_first = 0;
  Vertex next_second = first_colour == 0 ? zeros : ones;
  for (std::size_t v = 0; v < n; ++v) {
    label[v] = colour[v] == first_colour ? next_first++ : next_second++;
    source[static_cast<std::size_t>(label[v])] = ids[v];
  }
  std::vector<Edge> labeled;
  labeled.reserve(edges.size());
  for (auto [a, b] : edges) {
    labeled.emplace_back(label[static_cast<std::size_t>(dense(a))], label[static_cast<std::size_t>(dense(b))]);
  }
  return assemble(next_first, static_cast<int>(n) - next_first, std::move(labeled), std::move(source), options,
                  warnings);
}

std::vector<Edge> BipartiteGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < n1_; ++u) {
    for (Vertex v : neighbor_list(u)) out.emplace_back(u, v);
  }
  return out;
}

BipartiteGraph parse_graph(std::string_view text, const ParseOptions& options, std::vector<std::string>* warnings) {
  auto pairs = read_pairs(text);
  if (options.permissive) {
    std::vector<std::pair<std::int64_t, std::int64_t>> edges;
    edges.reserve(pairs.size());
    for (const auto& p : pairs) edges.emplace_back(p.a, p.b);
    return BipartiteGraph::from_unlabeled_edges(edges, options.build, warnings);
  }

  if (pairs.empty()) throw GraphError(GraphErrorKind::kMalformed, "missing 'n1 n2' header");
  const auto& header = pairs.front();
  if (header.a < 0 || header.b < 0 || header.a + header.b > std::int64_t{1} << 30) {
    throw GraphError(GraphErrorKind::kMalformed, "bad side sizes in header", header.line);
  }
  const auto n1 = static_cast<int>(header.a);
  const auto n = n1 + static_cast<int>(header.b);
  std::vector<Edge> edges;
  edges.reserve(pairs.size() - 1);
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    if (p.a < 0 || p.b < 0 || p.a >= n || p.b >= n) {
      throw GraphError(GraphErrorKind::kOutOfRange, "edge " + edge_text(p.a, p.b) + " outside 0.." +
                                                        std::to_string(n - 1), p.line);
    }
    if (p.a == p.b) throw GraphError(GraphErrorKind::kSelfLoop, "self-loop at vertex " + std::to_string(p.a), p.line);
    if ((p.a < n1) == (p.b < n1)) {
      throw GraphError(GraphErrorKind::kNonBipartite, "edge " + edge_text(p.a, p.b) + " joins two vertices on the same side",
                       p.line);
    }
    edges.emplace_back(static_cast<Vertex>(p.a), static_cast<Vertex>(p.b));
  }
  return BipartiteGraph::from_labeled_edges(n1, static_cast<int>(header.b), edges, options.build, warnings);
}

std::string serialize_graph(const BipartiteGraph& graph) {
  std::ostringstream out;
  out << graph.n1() << ' ' << graph.n2() << '\n';
  for (auto [u, v] : graph.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

ResidueSpec ResidueSpec::make(int r, int q) {
  if (q < 2) throw std::invalid_argument("modulus must be at least 2, got " + std::to_string(q));
  if (r < 0 || r >= q) {
    throw std::invalid_argument("residue must lie in [0, " + std::to_string(q) + "), got " + std::to_string(r));
  }
  return {r, q};
}

ResidueCheck verify_residue(const BipartiteGraph& graph, const VertexSet& subgraph, const ResidueSpec& spec) {
  for (Vertex v : subgraph) {
    const int degree = graph.degree_in(v, subgraph);
    const int residue = degree % spec.q;
    if (residue != spec.r) return {false, v, degree, residue};
  }
  return {};
}

}  // namespace moddeg
