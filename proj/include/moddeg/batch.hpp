#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "moddeg/construction.hpp"
#include "moddeg/generators.hpp"
#include "moddeg/oracle.hpp"

namespace moddeg {

inline constexpr int kReportSchemaVersion = 1;

// One family entry of a batch. Every parameter holds one or more values and
// the entry expands to their cartesian product, each repeated `instances`
// times. Random families draw a fresh seed per generated graph.
struct FamilySweep {
  std::string family;
  std::vector<std::pair<std::string, std::vector<double>>> params;
  int instances = 1;
  std::vector<int> ks;  // overrides the batch k list when non-empty
};

struct BatchSpec {
  std::uint64_t seed = 0;
  Mode mode = Mode::kSampled;
  int retries = 16;
  std::vector<int> ks{2};
  bool oracle = false;
  int oracle_max_vertices = 18;
  std::uint64_t oracle_budget = kDefaultOracleBudget;
  std::vector<FamilySweep> families;
};

// Parses the JSON batch document; `default_seed` applies when it has no
// "seed" field.
BatchSpec parse_batch_spec(const nlohmann::json& document, std::uint64_t default_seed = 0);

struct GraphInstance {
  std::size_t graph_index = 0;
  GeneratedGraph generated;
  std::vector<int> ks;
};

// Expands the sweeps into concrete graphs in declaration order.
std::vector<GraphInstance> expand_families(const BatchSpec& spec);

struct BatchRecord {
  std::size_t index = 0;
  std::size_t graph_index = 0;
  std::string descriptor;
  int order = 0;
  int n1 = 0;
  int n2 = 0;
  std::size_t edges = 0;
  int k = 2;
  std::uint64_t seed = 0;
  int subgraph_size = 0;
  int chosen_case = 1;
  int analysis_case = 1;
  std::optional<int> oracle_value;
  bool oracle_exact = false;
  double ratio = 0;         // |H| / n
  double scaled_ratio = 0;  // |H| k / n
};

struct BatchFailure {
  std::size_t index = 0;
  std::size_t graph_index = 0;
  std::string descriptor;
  int k = 2;
  std::string message;
};

struct BatchAggregate {
  std::size_t instances = 0;
  std::size_t verified = 0;
  std::size_t failures = 0;
  double min_ratio = 0;
  double mean_ratio = 0;
  double min_scaled_ratio = 0;
  double mean_scaled_ratio = 0;
  std::optional<double> min_oracle_ratio;
  std::size_t oracle_violations = 0;  // |H| > f(G,1,k), never expected
  std::map<int, std::size_t> case_histogram;
};

struct BatchReport {
  BatchSpec spec;
  std::vector<BatchRecord> records;  // only verified outputs
  std::vector<BatchFailure> failures;
  BatchAggregate aggregate;
  std::vector<std::pair<std::size_t, double>> wall_ms;  // kept apart from the rest
};

// Deterministic for a fixed spec, apart from wall_ms.
BatchReport run_batch(const BatchSpec& spec);

inline constexpr const char* kTimingSection = "[timing]";

// Sections: header, [records], [failures], [aggregate], then [timing] last
// so everything before it is reproducible byte for byte.
std::string report_csv(const BatchReport& report);

// Everything in a report_csv document before the timing section.
std::string strip_timing(const std::string& csv);

}  // namespace moddeg
