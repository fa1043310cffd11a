#include "doctest.h"

#include <sstream>

#include "moddeg/batch.hpp"
#include "moddeg/generators.hpp"
#include "moddeg/trace_json.hpp"

using namespace moddeg;
using nlohmann::json;

TEST_CASE("generators") {
  CHECK(generate(CompleteBipartite{3, 3}).graph.edge_count() == 9);
  const auto m = generate(Matching{5}).graph;
  CHECK(m.edge_count() == 5);
  for (Vertex v = 0; v < m.order(); ++v) CHECK(m.degree(v) == 1);
  const auto star = generate(Star{4}).graph;
  CHECK(star.n2() == 1);
  CHECK(star.degree(4) == 4);

  const auto a = generate(RandomBipartite{50, 50, 0.1, 7});
  const auto b = generate(RandomBipartite{50, 50, 0.1, 7});
  CHECK(serialize_graph(a.graph) == serialize_graph(b.graph));
  CHECK(a.descriptor == b.descriptor);
  CHECK(serialize_graph(generate(RandomBipartite{50, 50, 0.1, 8}).graph) != serialize_graph(a.graph));

  const auto sparse = generate(RandomBipartite{40, 40, 0.001, 1});
  CHECK(sparse.repaired > 0);
  CHECK(sparse.descriptor.find("repaired=" + std::to_string(sparse.repaired)) != std::string::npos);

  const auto reg = generate(RandomRegularish{30, 10, 3, 5}).graph;
  for (Vertex v = 0; v < 30; ++v) CHECK(reg.degree(v) >= 3);

  CHECK_THROWS_AS(generate(RandomRegularish{5, 3, 4, 1}), std::invalid_argument);
  CHECK_THROWS_AS(generate(RandomBipartite{5, 3, 0.0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(generate(CompleteBipartite{0, 3}), std::invalid_argument);

  const auto hubs = generate(PendantHubs{5, 2, 10, 0.5, 1}).graph;
  CHECK(hubs.n2() == 5);
  CHECK(hubs.n1() == 20);
}

namespace {

BatchSpec spec_from(const std::string& text) { return parse_batch_spec(json::parse(text)); }

}  // namespace

TEST_CASE("batch spec parsing") {
  const auto spec = spec_from(R"({
    "seed": 5, "mode": "derandomized", "retries": 3, "k": [2, 3],
    "oracle": {"enabled": true, "max_vertices": 12},
    "families": [
      {"family": "complete_bipartite", "a": [2, 3], "b": 4},
      {"family": "random", "n1": 10, "n2": 8, "edge_prob": 0.3, "instances": 4, "k": 5}
    ]})");
  CHECK(spec.seed == 5);
  CHECK(spec.mode == Mode::kDerandomized);
  CHECK(spec.retries == 3);
  CHECK(spec.ks == std::vector<int>{2, 3});
  CHECK(spec.oracle);
  CHECK(spec.oracle_max_vertices == 12);
  REQUIRE(spec.families.size() == 2);
  CHECK(spec.families[1].ks == std::vector<int>{5});
  const auto graphs = expand_families(spec);
  CHECK(graphs.size() == 6);
  CHECK(graphs[0].generated.descriptor == "complete_bipartite(a=2,b=4)");
  CHECK(graphs[1].generated.descriptor == "complete_bipartite(a=3,b=4)");
  CHECK(graphs[2].generated.descriptor != graphs[3].generated.descriptor);

  CHECK_THROWS(spec_from(R"({"families": [{"family": "nope"}]})"));
  CHECK_THROWS(spec_from(R"({"families": [{"family": "random", "n1": 3}]})"));
  CHECK_THROWS(spec_from(R"({"k": [1], "families": []})"));
  CHECK_THROWS(spec_from(R"({"mode": "fast", "families": []})"));
  CHECK(parse_batch_spec(json::parse(R"({"families": []})"), 77).seed == 77);
}

TEST_CASE("K_kk sweep gives ratio exactly 1/k") {
  std::string families;
  for (int k = 2; k <= 6; ++k) {
    if (!families.empty()) families += ",";
    families += R"({"family": "complete_bipartite", "a": )" + std::to_string(k) + R"(, "b": )" + std::to_string(k) +
                R"(, "k": )" + std::to_string(k) + "}";
  }
  const auto report = run_batch(spec_from(R"({"oracle": true, "families": [)" + families + "]}"));
  REQUIRE(report.records.size() == 5);
  for (const auto& r : report.records) {
    CHECK(r.subgraph_size == 2);
    CHECK(r.ratio == doctest::Approx(1.0 / r.k));
    REQUIRE(r.oracle_value);
    CHECK(*r.oracle_value == 2);
  }
  CHECK(report.aggregate.oracle_violations == 0);
}

TEST_CASE("matching sweep gives ratio 1") {
  const auto report = run_batch(spec_from(R"({"k": [2, 3, 9], "families": [{"family": "matching", "n": [1, 4, 30]}]})"));
  CHECK(report.records.size() == 9);
  for (const auto& r : report.records) CHECK(r.ratio == 1.0);
  CHECK(report.aggregate.min_ratio == 1.0);
}

TEST_CASE("batch reports are reproducible and internally consistent") {
  const std::string text = R"({
    "seed": 11, "k": [2, 3, 5], "retries": 4, "oracle": {"max_vertices": 14},
    "families": [
      {"family": "random", "n1": [6, 30], "n2": [5, 20], "edge_prob": 0.2, "instances": 3},
      {"family": "pendant_hubs", "hubs": 10, "pendants": 4, "extra": 40, "edge_prob": 0.5}
    ]})";
  const auto first = run_batch(spec_from(text));
  const auto second = run_batch(spec_from(text));
  const auto csv1 = report_csv(first);
  const auto csv2 = report_csv(second);
  CHECK(strip_timing(csv1) == strip_timing(csv2));
  CHECK(strip_timing(csv1).find(kTimingSection) == std::string::npos);
  CHECK(csv1.find(kTimingSection) != std::string::npos);
  CHECK(csv1.find("schema_version,1") != std::string::npos);

  CHECK(first.failures.empty());
  for (const auto& r : first.records) {
    CHECK(first.aggregate.min_ratio <= r.ratio);
    CHECK(r.ratio == doctest::Approx(static_cast<double>(r.subgraph_size) / r.order));
    CHECK(r.scaled_ratio == doctest::Approx(static_cast<double>(r.subgraph_size) * r.k / r.order));
    if (r.oracle_value) CHECK(r.subgraph_size <= *r.oracle_value);
  }
  std::size_t histogram_total = 0;
  for (auto [c, count] : first.aggregate.case_histogram) histogram_total += count;
  CHECK(histogram_total == first.records.size());
}

TEST_CASE("report rows can be read back") {
  const auto report = run_batch(spec_from(R"({"k": [3], "families": [{"family": "star", "m": [2, 5]}]})"));
  const auto csv = report_csv(report);
  std::istringstream in(csv);
  std::string line;
  bool in_records = false;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line == "[records]") {
      in_records = true;
      std::getline(in, line);  // header
      continue;
    }
    if (!line.empty() && line.front() == '[') in_records = false;
    if (in_records) {
      ++rows;
      CHECK(line.find("\"star(m=") != std::string::npos);
    }
  }
  CHECK(rows == 2);
}

TEST_CASE("trace JSON") {
  const auto g = generate(PendantHubs{6, 2, 20, 0.5, 4}).graph;
  const auto built = find_mod_one_subgraph(g, 3, {.mode = Mode::kSampled, .seed = 3});
  const auto brief = trace_to_json(g, built, false);
  CHECK(brief["schema_version"] == kTraceSchemaVersion);
  CHECK(brief["mode"] == "sampled");
  CHECK(brief["seed"] == 3);
  CHECK(brief["case"] == built.trace.chosen_case);
  CHECK(brief["sizes"]["H"] == built.subgraph.size());
  CHECK(brief["sizes"]["W"].size() == 2);
  CHECK(brief["candidates"].size() == 3);
  CHECK_FALSE(brief.contains("sets"));

  const auto full = trace_to_json(g, built, true);
  CHECK(full["sets"]["H"].get<std::vector<int>>() == built.subgraph.to_vector());
  CHECK(full["sets"]["levels"].size() == 2);
}
