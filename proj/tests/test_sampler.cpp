#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <map>
#include <random>

#include "ensembles.hpp"
#include "oracles.hpp"
#include "partmodes/engine.hpp"
#include "partmodes/sampler.hpp"

using namespace partmodes;

namespace {

std::string parse_error(const std::string& text, std::optional<std::size_t> n = std::nullopt) {
  try {
    parse_partitions(text, n);
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(LoadPartitions, RelabelSymmetry) {
  const PartitionSet set = parse_partitions("0 0 1 1\n1 1 0 0\n");
  ASSERT_EQ(set.size(), 2u);
  EXPECT_EQ(set[0], set[1]);
}

TEST(LoadPartitions, Errors) {
  EXPECT_NE(parse_error("").find("no partitions"), std::string::npos);
  EXPECT_NE(parse_error("# only a comment\n").find("no partitions"), std::string::npos);
  EXPECT_NE(parse_error("0 1 1\n0 1\n").find("line 2"), std::string::npos);
  EXPECT_NE(parse_error("# c\n0 1\n0 a\n").find("line 3"), std::string::npos);
  EXPECT_NE(parse_error("0 1.5\n").find("line 1"), std::string::npos);
  EXPECT_NE(parse_error("0 1\n", 3).find("line 1"), std::string::npos);
  EXPECT_THROW(load_partitions("/nonexistent/partitions.txt"), std::runtime_error);
}

TEST(LoadPartitions, WriteReadIdentity) {
  std::mt19937_64 rng(40);
  std::vector<Partition> parts;
  for (int i = 0; i < 30; ++i) parts.push_back(canonicalize(oracle::random_labels(rng, 37, 1 + rng() % 6)));
  const PartitionSet set(parts);
  const auto path = std::filesystem::temp_directory_path() / "partmodes_sampler_roundtrip.txt";
  write_partitions(set, path);
  const PartitionSet back = load_partitions(path, 37);
  EXPECT_EQ(back.partitions(), set.partitions());
  std::filesystem::remove(path);
}

TEST(PerturbationSpec, Validation) {
  auto spec = fixtures::unimodal(10, 0.1, 1);
  EXPECT_NO_THROW(spec.validate());
  auto bad = spec;
  bad.node_flip_rate = 1.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.samples = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.bases[0].weight = 0.9;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = fixtures::two_families(10, 0.1, 1);
  bad.bases[1].weight = -0.5;
  bad.bases[0].weight = 1.5;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.flip_units = {{0, 1}, {1, 2}};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.bases.clear();
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(PerturbEnsemble, NoFlipsGivesCopies) {
  const auto ens = perturb_ensemble(fixtures::unimodal(50, 0.0, 3));
  for (const auto& p : ens.set) EXPECT_EQ(p, fixtures::contiguous(100, 4));
  for (auto f : ens.flipped) EXPECT_EQ(f, 0u);
  for (auto c : ens.changed) EXPECT_EQ(c, 0u);
}

TEST(PerturbEnsemble, BaseCountsConcentrate) {
  const auto ens = perturb_ensemble(fixtures::two_families(10000, 0.05, 4));
  std::size_t first = 0;
  for (auto b : ens.base_of) first += (b == 0);
  EXPECT_LE(std::abs(static_cast<double>(first) - 5000.0), 4 * std::sqrt(10000 * 0.25));
}

TEST(PerturbEnsemble, ExpectedFlipsPerSample) {
  const std::size_t s = 4000;
  const auto ens = perturb_ensemble(fixtures::unimodal(s, 0.05, 5));
  double mean = 0.0, moved = 0.0;
  for (std::size_t i = 0; i < s; ++i) {
    mean += static_cast<double>(ens.flipped[i]);
    moved += static_cast<double>(ens.changed[i]);
  }
  mean /= static_cast<double>(s);
  moved /= static_cast<double>(s);
  // Binomial(100, 0.05) per sample: sd of the mean is sqrt(4.75 / s).
  EXPECT_NEAR(mean, 5.0, 4 * std::sqrt(4.75 / static_cast<double>(s)));
  // Three in four reassignments land in another of the 4 communities.
  EXPECT_NEAR(moved, 3.75, 4 * std::sqrt(100 * 0.0375 * 0.9625 / static_cast<double>(s)));
}

TEST(PerturbEnsemble, FlippedCountMatchesLabels) {
  const auto spec = fixtures::unimodal(300, 0.05, 6);
  const auto ens = perturb_ensemble(spec);
  const auto& base = spec.bases[0].partition;
  for (std::size_t i = 0; i < 300; ++i) {
    // Few flips leave each community's majority intact, so mapping every
    // sample community to its main base community recovers the moved nodes.
    std::map<Label, std::map<Label, int>> overlap;
    for (std::size_t v = 0; v < 100; ++v) ++overlap[ens.set[i][v]][base[v]];
    std::map<Label, Label> to_base;
    for (auto& [s, row] : overlap) {
      to_base[s] = std::max_element(row.begin(), row.end(), [](auto& a, auto& b) { return a.second < b.second; })->first;
    }
    std::size_t changed = 0;
    for (std::size_t v = 0; v < 100; ++v) changed += to_base[ens.set[i][v]] != base[v];
    EXPECT_EQ(changed, ens.changed[i]);
    EXPECT_LE(ens.changed[i], ens.flipped[i]);
  }
}

TEST(PerturbEnsemble, FlipUnitsMoveTogether) {
  const auto ens = perturb_ensemble(fixtures::ring_bimodal(500, 0.1, 7));
  std::size_t flipped = 0;
  for (std::size_t i = 0; i < 500; ++i) {
    EXPECT_EQ(ens.flipped[i] % 6, 0u);
    flipped += ens.flipped[i];
    for (std::size_t c = 0; c < 8; ++c)
      for (std::size_t v = 1; v < 6; ++v) ASSERT_EQ(ens.set[i][6 * c + v], ens.set[i][6 * c]);
  }
  // Each of the 8 cliques is reassigned with probability 0.1.
  EXPECT_NEAR(static_cast<double>(flipped) / 500.0, 0.1 * 48, 4 * 6 * std::sqrt(8 * 0.09 / 500));
}

TEST(PerturbEnsemble, RecoveredExactlyWithoutNoise) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto spec = fixtures::two_families(400, 0.0, seed, 0.3);
    const auto ens = perturb_ensemble(spec);
    EngineParams params;
    params.seed = seed;
    const auto r = run(ens.set, params);
    ASSERT_EQ(r.clustering.num_clusters(), 2u);
    const double w = 0.7, sd = std::sqrt(400 * 0.21) / 400;
    EXPECT_NEAR(r.weights[0], w, 4 * sd);
    EXPECT_NEAR(r.weights[1], 1 - w, 4 * sd);
    // Clusters come out by decreasing weight: the 0.7 base first.
    EXPECT_EQ(r.modes[0], spec.bases[1].partition);
    EXPECT_EQ(r.modes[1], spec.bases[0].partition);
  }
}

TEST(Modularity, KnownValues) {
  const auto ring = ring_of_cliques(8, 6);
  EXPECT_NEAR(modularity(ring.graph, ring.truth), 0.8125, 1e-12);
  EXPECT_NEAR(modularity(ring.graph, fixtures::clique_pairings()[0]), 0.71875, 1e-12);
  EXPECT_NEAR(modularity(ring.graph, canonicalize(std::vector<int>(48, 0))), 0.0, 1e-12);
}

TEST(McmcSample, Errors) {
  const auto ring = ring_of_cliques(4, 3);
  McmcParams p;
  p.samples = 0;
  EXPECT_THROW(mcmc_sample(ring.graph, p), std::invalid_argument);
  EXPECT_THROW(mcmc_sample(Graph{}, McmcParams{}), std::invalid_argument);
}

TEST(McmcSample, DeterministicAndBounded) {
  const auto g = planted_partition(40, 4, 0.5, 0.05, 2).graph;
  McmcParams p;
  p.samples = 30;
  p.q_max = 5;
  p.beta = 20;
  p.seed = 9;
  const auto a = mcmc_sample(g, p), b = mcmc_sample(g, p);
  EXPECT_EQ(a.partitions(), b.partitions());
  for (const auto& part : a) {
    EXPECT_GE(part.num_communities(), 1u);
    EXPECT_LE(part.num_communities(), 5u);
  }
}

TEST(McmcSample, HighBetaKeepsCliquesWhole) {
  const auto ring = ring_of_cliques(8, 6);
  McmcParams p;
  p.samples = 100;
  p.beta = 1000;
  p.seed = 11;
  for (const auto& part : mcmc_sample(ring.graph, p)) {
    for (std::size_t c = 0; c < 8; ++c)
      for (std::size_t v = 1; v < 6; ++v) ASSERT_EQ(part[6 * c + v], part[6 * c]);
  }
}

TEST(McmcSample, TwoCliquesConcentrateOnTheCut) {
  // Two disjoint 6-cliques; the best two-community labeling is found by
  // exhaustive search over all 2^12 labelings.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t base : {0u, 6u})
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = i + 1; j < 6; ++j) edges.emplace_back(base + i, base + j);
  const Graph g(12, edges);
  double best = -1;
  Partition best_part;
  for (unsigned mask = 0; mask < (1u << 12); ++mask) {
    std::vector<int> labels(12);
    for (int i = 0; i < 12; ++i) labels[i] = (mask >> i) & 1;
    const Partition part = canonicalize(labels);
    const double q = modularity(g, part);
    if (q > best + 1e-12) {
      best = q;
      best_part = part;
    }
  }
  EXPECT_NEAR(best, 0.5, 1e-12);
  McmcParams p;
  p.samples = 200;
  p.q_max = 2;
  p.beta = 500;
  p.seed = 12;
  std::size_t hits = 0;
  for (const auto& part : mcmc_sample(g, p)) hits += part == best_part;
  EXPECT_GE(hits, 190u);
}
