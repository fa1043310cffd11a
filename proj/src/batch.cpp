#include "moddeg/batch.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "moddeg/rng.hpp"

namespace moddeg {

namespace {

using nlohmann::json;

// Parameter names per family, in expansion order.
const std::map<std::string, std::vector<std::string>>& family_parameters() {
  static const std::map<std::string, std::vector<std::string>> table{
      {"complete_bipartite", {"a", "b"}},
      {"random", {"n1", "n2", "edge_prob"}},
      {"matching", {"n"}},
      {"random_regularish", {"n1", "n2", "d"}},
      {"star", {"m"}},
      {"pendant_hubs", {"hubs", "pendants", "extra", "edge_prob"}},
  };
  return table;
}

std::vector<double> as_values(const json& node, const std::string& name) {
  std::vector<double> values;
  if (node.is_number()) {
    values.push_back(node.get<double>());
  } else if (node.is_array()) {
    for (const auto& item : node) {
      if (!item.is_number()) throw std::invalid_argument("parameter '" + name + "' must hold numbers");
      values.push_back(item.get<double>());
    }
  } else {
    throw std::invalid_argument("parameter '" + name + "' must be a number or an array of numbers");
  }
  if (values.empty()) throw std::invalid_argument("parameter '" + name + "' has no values");
  return values;
}

std::vector<int> as_ks(const json& node) {
  std::vector<int> ks;
  if (node.is_number_integer()) {
    ks.push_back(node.get<int>());
  } else if (node.is_array()) {
    for (const auto& item : node) ks.push_back(item.get<int>());
  } else {
    throw std::invalid_argument("'k' must be an integer or an array of integers");
  }
  for (int k : ks) {
    if (k < 2) throw std::invalid_argument("every k must be at least 2");
  }
  return ks;
}

int as_int(double value, const std::string& name) {
  if (value != std::floor(value)) throw std::invalid_argument("parameter '" + name + "' must be an integer");
  return static_cast<int>(value);
}

GraphFamily make_family(const std::string& family, const std::vector<double>& v, std::uint64_t seed) {
  if (family == "complete_bipartite") return CompleteBipartite{as_int(v[0], "a"), as_int(v[1], "b")};
  if (family == "random") return RandomBipartite{as_int(v[0], "n1"), as_int(v[1], "n2"), v[2], seed};
  if (family == "matching") return Matching{as_int(v[0], "n")};
  if (family == "random_regularish") {
    return RandomRegularish{as_int(v[0], "n1"), as_int(v[1], "n2"), as_int(v[2], "d"), seed};
  }
  if (family == "star") return Star{as_int(v[0], "m")};
  if (family == "pendant_hubs") {
    return PendantHubs{as_int(v[0], "hubs"), as_int(v[1], "pendants"), as_int(v[2], "extra"), v[3], seed};
  }
  throw std::invalid_argument("unknown family '" + family + "'");
}

std::string quoted(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

BatchSpec parse_batch_spec(const json& document, std::uint64_t default_seed) {
  if (!document.is_object()) throw std::invalid_argument("batch spec must be a JSON object");
  if (document.contains("schema_version") && document.at("schema_version").get<int>() != kReportSchemaVersion) {
    throw std::invalid_argument("unsupported batch spec schema_version");
  }
  BatchSpec spec;
  spec.seed = document.value("seed", default_seed);
  spec.mode = mode_from_string(document.value("mode", std::string("sampled")));
  spec.retries = document.value("retries", 16);
  if (spec.retries < 1) throw std::invalid_argument("retries must be at least 1");
  if (document.contains("k")) spec.ks = as_ks(document.at("k"));
  if (document.contains("oracle")) {
    const auto& oracle = document.at("oracle");
    if (oracle.is_boolean()) {
      spec.oracle = oracle.get<bool>();
    } else {
      spec.oracle = oracle.value("enabled", true);
      spec.oracle_max_vertices = oracle.value("max_vertices", spec.oracle_max_vertices);
      spec.oracle_budget = oracle.value("budget", spec.oracle_budget);
    }
  }
  if (!document.contains("families") || !document.at("families").is_array()) {
    throw std::invalid_argument("batch spec needs a 'families' array");
  }
  for (const auto& entry : document.at("families")) {
    FamilySweep sweep;
    sweep.family = entry.at("family").get<std::string>();
    const auto known = family_parameters().find(sweep.family);
    if (known == family_parameters().end()) throw std::invalid_argument("unknown family '" + sweep.family + "'");
    for (const auto& name : known->second) {
      if (!entry.contains(name)) {
        throw std::invalid_argument("family '" + sweep.family + "' needs parameter '" + name + "'");
      }
      sweep.params.emplace_back(name, as_values(entry.at(name), name));
    }
    sweep.instances = entry.value("instances", 1);
    if (sweep.instances < 1) throw std::invalid_argument("instances must be at least 1");
    if (entry.contains("k")) sweep.ks = as_ks(entry.at("k"));
    spec.families.push_back(std::move(sweep));
  }
  return spec;
}

std::vector<GraphInstance> expand_families(const BatchSpec& spec) {
  std::vector<GraphInstance> graphs;
  for (const auto& sweep : spec.families) {
    std::size_t combos = 1;
    for (const auto& [name, values] : sweep.params) combos *= values.size();
    for (std::size_t combo = 0; combo < combos; ++combo) {
      // Mixed-radix decode with the last parameter varying fastest.
      std::vector<double> values(sweep.params.size());
      auto rest = combo;
      for (std::size_t i = sweep.params.size(); i-- > 0;) {
        const auto& options = sweep.params[i].second;
        values[i] = options[rest % options.size()];
        rest /= options.size();
      }
      for (int rep = 0; rep < sweep.instances; ++rep) {
        const auto index = graphs.size();
        const auto seed = derive_seed(spec.seed, {0x67726170ULL, index});
        graphs.push_back({index, generate(make_family(sweep.family, values, seed)), sweep.ks.empty() ? spec.ks : sweep.ks});
      }
    }
  }
  return graphs;
}

BatchReport run_batch(const BatchSpec& spec) {
  BatchReport report;
  report.spec = spec;
  const auto graphs = expand_families(spec);

  std::size_t index = 0;
  for (const auto& instance : graphs) {
    const auto& graph = instance.generated.graph;
    for (int k : instance.ks) {
      const auto started = std::chrono::steady_clock::now();
      const auto seed = derive_seed(spec.seed, {0x72756eULL, index});
      try {
        FindOptions options;
        options.mode = spec.mode;
        options.seed = seed;
        options.retries = spec.retries;
        const auto built = find_mod_one_subgraph(graph, k, options);
        const auto check = verify_residue(graph, built.subgraph, {1, k});
        if (built.subgraph.empty() || !check.ok) {
          throw std::logic_error(built.subgraph.empty() ? "empty output"
                                                        : fmt::format("vertex {} has induced degree {}", check.witness,
                                                                      check.witness_degree));
        }
        BatchRecord record;
        record.index = index;
        record.graph_index = instance.graph_index;
        record.descriptor = instance.generated.descriptor;
        record.order = graph.order();
        record.n1 = graph.n1();
        record.n2 = graph.n2();
        record.edges = graph.edge_count();
        record.k = k;
        record.seed = seed;
        record.subgraph_size = static_cast<int>(built.subgraph.size());
        record.chosen_case = built.trace.chosen_case;
        record.analysis_case = built.trace.analysis_case;
        record.ratio = static_cast<double>(record.subgraph_size) / record.order;
        record.scaled_ratio = static_cast<double>(record.subgraph_size) * k / record.order;
        if (spec.oracle && graph.order() <= spec.oracle_max_vertices) {
          const auto oracle = exact_f(graph, {1, k}, spec.oracle_budget);
          record.oracle_value = oracle.value;
          record.oracle_exact = !oracle.timed_out;
        }
        report.records.push_back(std::move(record));
      } catch (const std::exception& e) {
        report.failures.push_back({index, instance.graph_index, instance.generated.descriptor, k, e.what()});
      }
      const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started);
      report.wall_ms.emplace_back(index, elapsed.count());
      ++index;
    }
  }

  auto& agg = report.aggregate;
  agg.instances = index;
  agg.verified = report.records.size();
  agg.failures = report.failures.size();
  if (!report.records.empty()) {
    agg.min_ratio = agg.min_scaled_ratio = std::numeric_limits<double>::infinity();
    for (const auto& r : report.records) {
      agg.min_ratio = std::min(agg.min_ratio, r.ratio);
      agg.min_scaled_ratio = std::min(agg.min_scaled_ratio, r.scaled_ratio);
      agg.mean_ratio += r.ratio;
      agg.mean_scaled_ratio += r.scaled_ratio;
      ++agg.case_histogram[r.chosen_case];
      if (r.oracle_value && r.oracle_exact) {
        const double oracle_ratio = static_cast<double>(*r.oracle_value) / r.order;
        agg.min_oracle_ratio = std::min(agg.min_oracle_ratio.value_or(oracle_ratio), oracle_ratio);
        if (r.subgraph_size > *r.oracle_value) ++agg.oracle_violations;
      }
    }
    agg.mean_ratio /= static_cast<double>(report.records.size());
    agg.mean_scaled_ratio /= static_cast<double>(report.records.size());
  }
  return report;
}

std::string report_csv(const BatchReport& report) {
  const auto& spec = report.spec;
  std::string out;
  out += "# moddeg bench report\n";
  out += fmt::format("schema_version,{}\n", kReportSchemaVersion);
  out += fmt::format("seed,{}\nmode,{}\nretries,{}\n", spec.seed, to_string(spec.mode), spec.retries);
  out += fmt::format("oracle,{}\n", spec.oracle ? fmt::format("max_vertices={} budget={}", spec.oracle_max_vertices,
                                                               spec.oracle_budget)
                                                 : std::string("off"));

  out += "[records]\n";
  out += "index,graph,k,n,n1,n2,edges,h_size,case,analysis_case,ratio,ratio_times_k,oracle_f,oracle_exact,"
         "oracle_ratio,seed,descriptor\n";
  for (const auto& r : report.records) {
    const auto oracle_f = r.oracle_value ? std::to_string(*r.oracle_value) : std::string();
    const auto oracle_ratio =
        r.oracle_value ? fmt::format("{:.6f}", static_cast<double>(*r.oracle_value) / r.order) : std::string();
    const auto oracle_exact = r.oracle_value ? std::string(r.oracle_exact ? "yes" : "no") : std::string();
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{:.6f},{:.6f},{},{},{},{},{}\n", r.index, r.graph_index, r.k,
                       r.order, r.n1, r.n2, r.edges, r.subgraph_size, r.chosen_case, r.analysis_case, r.ratio,
                       r.scaled_ratio, oracle_f, oracle_exact, oracle_ratio, r.seed, quoted(r.descriptor));
  }

  out += "[failures]\n";
  out += "index,graph,k,descriptor,message\n";
  for (const auto& f : report.failures) {
    out += fmt::format("{},{},{},{},{}\n", f.index, f.graph_index, f.k, quoted(f.descriptor), quoted(f.message));
  }

  const auto& agg = report.aggregate;
  out += "[aggregate]\n";
  out += "metric,value\n";
  out += fmt::format("instances,{}\nverified,{}\nfailures,{}\n", agg.instances, agg.verified, agg.failures);
  out += fmt::format("min_ratio,{:.6f}\nmean_ratio,{:.6f}\n", agg.min_ratio, agg.mean_ratio);
  out += fmt::format("min_ratio_times_k,{:.6f}\nmean_ratio_times_k,{:.6f}\n", agg.min_scaled_ratio,
                     agg.mean_scaled_ratio);
  out += fmt::format("min_oracle_ratio,{}\n", agg.min_oracle_ratio ? fmt::format("{:.6f}", *agg.min_oracle_ratio) : "");
  out += fmt::format("oracle_violations,{}\n", agg.oracle_violations);
  for (int c = 1; c <= 3; ++c) {
    const auto it = agg.case_histogram.find(c);
    out += fmt::format("case_{},{}\n", c, it == agg.case_histogram.end() ? 0 : it->second);
  }

  out += std::string(kTimingSection) + "\n";
  out += "index,wall_ms\n";
  for (auto [i, ms] : report.wall_ms) out += fmt::format("{},{:.3f}\n", i, ms);
  return out;
}

std::string strip_timing(const std::string& csv) {
  const auto marker = csv.find(std::string("\n") + kTimingSection + "\n");
  return marker == std::string::npos ? csv : csv.substr(0, marker + 1);
}

}  // namespace moddeg
