#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "partmodes/graph.hpp"
#include "partmodes/partition.hpp"

namespace partmodes {

/// Partition text format: one partition per line, whitespace-separated
/// integer labels, '#' lines ignored, every line the same length.
/// Errors name the offending line.
PartitionSet parse_partitions(const std::string& text, std::optional<std::size_t> expected_nodes = std::nullopt);
PartitionSet load_partitions(const std::filesystem::path& path,
                             std::optional<std::size_t> expected_nodes = std::nullopt);
std::string format_partitions(const std::vector<Partition>& partitions);
void write_partitions(const std::vector<Partition>& partitions, const std::filesystem::path& path);
void write_partitions(const PartitionSet& set, const std::filesystem::path& path);

struct PerturbationBase {
  Partition partition;
  double weight = 1.0;
};

/// Ground-truth ensemble: each sample copies a base chosen by weight, then
/// every flip unit is independently, with probability node_flip_rate,
/// reassigned to a uniformly chosen community of that base (possibly its own).
struct PerturbationSpec {
  std::vector<PerturbationBase> bases;
  double node_flip_rate = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 1;
  /// Groups of nodes that flip together. Empty means every node on its own.
  std::vector<std::vector<std::size_t>> flip_units;

  void validate() const;
};

struct PerturbedEnsemble {
  PartitionSet set;
  std::vector<std::size_t> base_of;  // generating base per sample
  std::vector<std::size_t> flipped;  // nodes reassigned, per sample
  std::vector<std::size_t> changed;  // reassigned nodes that landed in a new community
};

PerturbedEnsemble perturb_ensemble(const PerturbationSpec& spec);

struct McmcParams {
  std::size_t samples = 100;
  std::size_t sweeps_between = 10;
  double beta = 1.0;
  std::size_t q_max = 10;
  std::uint64_t seed = 1;
};

/// Newman-Girvan modularity of a labeling.
double modularity(const Graph& graph, const Partition& partition);

/// Single-node Metropolis sampling of labelings with weight exp(beta * Q).
/// Burn-in is 10 * sweeps_between sweeps, then one partition is recorded every
/// sweeps_between sweeps.
PartitionSet mcmc_sample(const Graph& graph, const McmcParams& params);

}  // namespace partmodes
