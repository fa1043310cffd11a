// moddeg: induced subgraphs with every degree ≡ 1 (mod k) in bipartite graphs.
//
//   moddeg find graph.txt --k 5 --mode derandomized --trace out.json
//   moddeg oracle graph.txt --r 1 --q 3
//   moddeg gen --family random --n1 50 --n2 50 --p 0.1 --seed 7
//   moddeg bench spec.json --out report.csv
//   moddeg mixing --k-max 30

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include <fmt/format.h>

#include "moddeg/batch.hpp"
#include "moddeg/construction.hpp"
#include "moddeg/generators.hpp"
#include "moddeg/graph.hpp"
#include "moddeg/mixing.hpp"
#include "moddeg/oracle.hpp"
#include "moddeg/trace_json.hpp"

namespace {

using namespace moddeg;

constexpr int kVerificationFailed = 2;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("MODDEG_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring unparsable MODDEG_SEED='" << env << "'\n";
    }
  }
  return 0;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

BipartiteGraph load_graph(const std::string& path, bool permissive) {
  std::vector<std::string> warnings;
  ParseOptions options;
  options.permissive = permissive;
  auto graph = parse_graph(read_file(path), options, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << path << ": " << w << '\n';
  return graph;
}

std::string join(const VertexSet& set) {
  std::string out;
  for (Vertex v : set) {
    if (!out.empty()) out += ' ';
    out += std::to_string(v);
  }
  return out;
}

struct FindArgs {
  std::string graph;
  int k = 2;
  std::string mode = "sampled";
  std::uint64_t seed = 0;
  int retries = 16;
  std::string trace;
  bool verbose = false;
  bool permissive = false;
  int threshold_exponent = 3;
};

int run_find(const FindArgs& args) {
  const auto graph = load_graph(args.graph, args.permissive);
  FindOptions options;
  options.mode = mode_from_string(args.mode);
  options.seed = args.seed;
  options.retries = args.retries;
  options.config.threshold_exponent = args.threshold_exponent;
  const auto built = find_mod_one_subgraph(graph, args.k, options);
  const auto check = verify_residue(graph, built.subgraph, {1, args.k});
  const bool ok = check.ok && !built.subgraph.empty();

  std::cout << fmt::format("n={} n1={} n2={} k={} |H|={} case={} analysis_case={} ratio={:.6f} verified={}\n",
                           graph.order(), graph.n1(), graph.n2(), args.k, built.subgraph.size(),
                           built.trace.chosen_case, built.trace.analysis_case,
                           static_cast<double>(built.subgraph.size()) / graph.order(), ok ? "yes" : "no");
  std::cout << "H: " << join(built.subgraph) << '\n';
  if (!args.trace.empty()) write_output(args.trace, trace_to_json(graph, built, args.verbose).dump(2) + "\n");
  if (!ok) {
    std::cerr << "verification failed at vertex " << check.witness << " (induced degree " << check.witness_degree
              << ")\n";
    return kVerificationFailed;
  }
  return 0;
}

struct OracleArgs {
  std::vector<std::string> graphs;
  int r = 1;
  int q = 2;
  std::uint64_t budget = kDefaultOracleBudget;
  bool permissive = false;
};

int run_oracle(const OracleArgs& args) {
  const auto spec = ResidueSpec::make(args.r, args.q);
  std::cout << "graph,n,f,ratio,witness,exact\n";
  int status = 0;
  for (const auto& path : args.graphs) {
    const auto graph = load_graph(path, args.permissive);
    const auto result = exact_f(graph, spec, args.budget);
    if (!verify_residue(graph, result.witness, spec).ok) status = kVerificationFailed;
    std::cout << fmt::format("{},{},{},{:.6f},{},{}\n", path, graph.order(), result.value,
                             static_cast<double>(result.value) / graph.order(), join(result.witness),
                             result.timed_out ? "no" : "yes");
  }
  return status;
}

struct GenArgs {
  std::string family;
  int a = 1, b = 1, n = 1, n1 = 1, n2 = 1, d = 1, m = 1, hubs = 1, pendants = 1, extra = 0;
  double p = 0.5;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen(const GenArgs& args) {
  GraphFamily family;
  if (args.family == "complete_bipartite") {
    family = CompleteBipartite{args.a, args.b};
  } else if (args.family == "random") {
    family = RandomBipartite{args.n1, args.n2, args.p, args.seed};
  } else if (args.family == "matching") {
    family = Matching{args.n};
  } else if (args.family == "random_regularish") {
    family = RandomRegularish{args.n1, args.n2, args.d, args.seed};
  } else if (args.family == "star") {
    family = Star{args.m};
  } else if (args.family == "pendant_hubs") {
    family = PendantHubs{args.hubs, args.pendants, args.extra, args.p, args.seed};
  } else {
    throw std::invalid_argument("unknown family '" + args.family + "'");
  }
  const auto generated = generate(family);
  write_output(args.out, "# " + generated.descriptor + "\n" + serialize_graph(generated.graph));
  return 0;
}

int run_bench(const std::string& spec_path, const std::string& out, std::uint64_t seed) {
  const auto spec = parse_batch_spec(nlohmann::json::parse(read_file(spec_path)), seed);
  const auto report = run_batch(spec);
  write_output(out, report_csv(report));
  const auto& agg = report.aggregate;
  std::cerr << fmt::format("{} instances, {} verified, {} failures, min ratio {:.6f}, min ratio*k {:.6f}\n",
                           agg.instances, agg.verified, agg.failures, agg.min_ratio, agg.min_scaled_ratio);
  return agg.failures == 0 && agg.oracle_violations == 0 ? 0 : kVerificationFailed;
}

int run_mixing(int k_max, int threshold_exponent, const std::string& format, const std::string& out) {
  if (k_max < 2) throw std::invalid_argument("--k-max must be at least 2");
  write_output(out, proposition_table(k_max, threshold_exponent, format == "csv"));
  for (int k = 2; k <= std::min(k_max, 30); ++k) {
    if (!check_proposition(k, threshold_exponent).passes) return kVerificationFailed;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Large induced subgraphs with all degrees 1 (mod k) in bipartite graphs"};
  app.require_subcommand(1);
  const auto seed_default = default_seed();

  FindArgs find;
  find.seed = seed_default;
  auto* find_cmd = app.add_subcommand("find", "Construct H for one graph");
  find_cmd->add_option("graph", find.graph, "Edge-list file")->required();
  find_cmd->add_option("--k", find.k, "Modulus k >= 2")->required();
  find_cmd->add_option("--mode", find.mode, "sampled or derandomized")
      ->check(CLI::IsMember({"sampled", "derandomized"}));
  find_cmd->add_option("--seed", find.seed, "Sampling seed (default $MODDEG_SEED or 0)");
  find_cmd->add_option("--retries", find.retries, "Draws per case in sampled mode")->check(CLI::PositiveNumber);
  find_cmd->add_option("--trace", find.trace, "Write the JSON trace here");
  find_cmd->add_option("--threshold-exponent", find.threshold_exponent, "High-degree cutoff is k^this");
  find_cmd->add_flag("--verbose", find.verbose, "Include vertex sets in the trace");
  find_cmd->add_flag("--permissive", find.permissive, "Header-less edge list, bipartition by 2-colouring");

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact f(G, r, q) by exhaustive search");
  oracle_cmd->add_option("graphs", oracle.graphs, "Edge-list files")->required();
  oracle_cmd->add_option("--r", oracle.r, "Target residue");
  oracle_cmd->add_option("--q", oracle.q, "Modulus");
  oracle_cmd->add_option("--budget", oracle.budget, "Search node limit");
  oracle_cmd->add_flag("--permissive", oracle.permissive, "Header-less edge list");

  GenArgs gen;
  gen.seed = seed_default;
  auto* gen_cmd = app.add_subcommand("gen", "Emit a generated graph as an edge list");
  gen_cmd->add_option("--family", gen.family)
      ->required()
      ->check(CLI::IsMember({"complete_bipartite", "random", "matching", "random_regularish", "star", "pendant_hubs"}));
  gen_cmd->add_option("--a", gen.a);
  gen_cmd->add_option("--b", gen.b);
  gen_cmd->add_option("--n", gen.n);
  gen_cmd->add_option("--n1", gen.n1);
  gen_cmd->add_option("--n2", gen.n2);
  gen_cmd->add_option("--d", gen.d);
  gen_cmd->add_option("--m", gen.m);
  gen_cmd->add_option("--hubs", gen.hubs);
  gen_cmd->add_option("--pendants", gen.pendants);
  gen_cmd->add_option("--extra", gen.extra);
  gen_cmd->add_option("--p", gen.p, "Edge probability");
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");

  std::string bench_spec;
  std::string bench_out;
  std::uint64_t bench_seed = seed_default;
  auto* bench_cmd = app.add_subcommand("bench", "Run a batch spec and write a CSV report");
  bench_cmd->add_option("spec", bench_spec, "Batch spec (JSON)")->required();
  bench_cmd->add_option("--out", bench_out, "Report file (default stdout)");
  bench_cmd->add_option("--seed", bench_seed, "Seed when the spec has none");

  int k_max = 30;
  int mixing_exponent = 3;
  std::string mixing_format = "text";
  std::string mixing_out;
  auto* mixing_cmd = app.add_subcommand("mixing", "Residue distributions of fair-coin sums mod k");
  mixing_cmd->add_option("--k-max", k_max);
  mixing_cmd->add_option("--threshold-exponent", mixing_exponent);
  mixing_cmd->add_option("--format", mixing_format)->check(CLI::IsMember({"text", "csv"}));
  mixing_cmd->add_option("--out", mixing_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*find_cmd) return run_find(find);
    if (*oracle_cmd) return run_oracle(oracle);
    if (*gen_cmd) return run_gen(gen);
    if (*bench_cmd) return run_bench(bench_spec, bench_out, bench_seed);
    if (*mixing_cmd) return run_mixing(k_max, mixing_exponent, mixing_format, mixing_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
