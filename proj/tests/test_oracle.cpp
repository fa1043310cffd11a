#include "doctest.h"

#include <random>

#include "moddeg/construction.hpp"
#include "moddeg/generators.hpp"
#include "moddeg/oracle.hpp"
#include "support/oracles.hpp"

using namespace moddeg;

TEST_CASE("single edge") {
  const auto g = generate(Matching{1}).graph;
  for (int k = 2; k <= 5; ++k) {
    const auto result = exact_f(g, {1, k});
    CHECK(result.value == 2);
    CHECK(result.witness == g.all());
    CHECK_FALSE(result.timed_out);
  }
}

TEST_CASE("K33 mod 3 and the star mod 2") {
  const auto k33 = generate(CompleteBipartite{3, 3}).graph;
  CHECK(exact_f(k33, {1, 3}).value == 2);
  CHECK(testing::naive_f(k33, 1, 3) == 2);

  const auto star = generate(Star{3}).graph;
  const auto result = exact_f(star, {1, 2});
  CHECK(result.value == 4);
  CHECK(testing::naive_f(star, 1, 2) == 4);
}

TEST_CASE("K_kk is tight at 2 for k = 2..6") {
  for (int k = 2; k <= 6; ++k) {
    const auto g = generate(CompleteBipartite{k, k}).graph;
    const auto result = exact_f(g, {1, k});
    CHECK(result.value == 2);
    CHECK(verify_residue(g, result.witness, {1, k}).ok);
  }
}

TEST_CASE("no valid subgraph gives zero") {
  // Residue 2 mod 3 needs degree >= 2, impossible in a single edge.
  const auto g = generate(Matching{1}).graph;
  const auto result = exact_f(g, {2, 3});
  CHECK(result.value == 0);
  CHECK(result.witness.empty());
}

TEST_CASE("budget exhaustion is flagged") {
  const auto g = generate(RandomBipartite{12, 12, 0.5, 3}).graph;
  const auto result = exact_f(g, {1, 3}, 50);
  CHECK(result.timed_out);
  CHECK(result.explored >= 50);
  CHECK(verify_residue(g, result.witness, {1, 3}).ok);
}

TEST_CASE("pruned search agrees with naive enumeration") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 120; ++trial) {
    const auto g = testing::random_small_graph(rng, 2, 13);
    const int q = 2 + static_cast<int>(rng() % 4);
    const int r = static_cast<int>(rng() % static_cast<std::uint64_t>(q));
    const auto result = exact_f(g, {r, q});
    CHECK(result.value == testing::naive_f(g, r, q));
    CHECK(static_cast<int>(result.witness.size()) == result.value);
    CHECK(verify_residue(g, result.witness, {r, q}).ok);
  }
}

TEST_CASE("relabelling does not change f") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = testing::random_small_graph(rng, 4, 16);
    const auto h = testing::relabel_within_sides(g, rng);
    for (int k : {2, 3}) CHECK(exact_f(g, {1, k}).value == exact_f(h, {1, k}).value);
  }
}

TEST_CASE("construction never exceeds the optimum") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = testing::random_small_graph(rng, 2, 16);
    for (int k : {2, 3, 4}) {
      const auto built = find_mod_one_subgraph(g, k, {.mode = Mode::kDerandomized});
      CHECK(static_cast<int>(built.subgraph.size()) <= exact_f(g, {1, k}).value);
    }
  }
}

TEST_CASE("even-degree subgraphs cover half the vertices") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = testing::random_small_graph(rng, 2, 16);
    CHECK(2 * exact_f(g, {0, 2}).value >= g.order());
  }
}

TEST_CASE("empirical_c") {
  std::vector<BipartiteGraph> family;
  for (int k = 2; k <= 5; ++k) family.push_back(generate(CompleteBipartite{k, k}).graph);
  for (int k = 2; k <= 5; ++k) {
    const auto report = empirical_c(std::span(family).subspan(static_cast<std::size_t>(k - 2), 1), k);
    CHECK(report.min_ratio == doctest::Approx(1.0 / k));
    CHECK(report.inexact == 0);
  }
  const std::vector<BipartiteGraph> edge{generate(Matching{1}).graph};
  CHECK(empirical_c(edge, 3).min_ratio == 1.0);

  const auto flagged = empirical_c(family, 2, 3);
  CHECK(flagged.inexact > 0);
  for (const auto& e : flagged.entries) {
    if (!e.exact) CHECK(e.value >= e.construction_size);
  }
}
