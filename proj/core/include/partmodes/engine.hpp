#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "partmodes/objective.hpp"
#include "partmodes/partition.hpp"
#include "partmodes/table_count.hpp"

namespace partmodes {

enum class MoveKind { reassign, merge, split, merge_split };

std::string_view to_string(MoveKind kind);

struct EngineParams {
  double lambda = 1.0;
  std::size_t k0 = 1;
  std::size_t mode_sample_size = 30;
  /// Consecutive rejected (or skipped) proposals before stopping.
  std::size_t patience = 100;
  std::uint64_t seed = 1;
  /// Clusters up to this size get an exhaustive mode search.
  std::size_t exact_mode_threshold = 30;
  std::size_t max_kmeans_iters = 30;
  /// Independent runs; the lowest total wins.
  std::size_t restarts = 1;
  /// Hard cap on proposals per run, 0 for none.
  std::size_t max_moves = 0;
  OmegaOptions omega;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

struct TraceEntry {
  std::size_t step = 0;
  MoveKind move = MoveKind::reassign;
  bool accepted = false;
  bool skipped = false;  // the move did not apply (K < 2, singleton cluster, no-op)
  double total = 0.0;    // objective after the step
};

struct ClusteringResult {
  double lambda = 1.0;
  /// Cluster ids are ordered by decreasing weight, ties by mode index.
  Clustering clustering;
  ObjectiveBreakdown breakdown;
  std::vector<double> weights;
  std::vector<Partition> modes;
  std::vector<TraceEntry> trace;
};

struct ClusterState {
  std::vector<std::size_t> members;  // ascending partition indices
  std::size_t mode = 0;
  double cost = 0.0;  // (N/S) (H(mode) + sum over members of H_mod(member | mode))
};

struct EngineState {
  std::vector<ClusterState> clusters;
  std::vector<std::size_t> assignment;
  double total = 0.0;

  std::size_t num_clusters() const noexcept { return clusters.size(); }
  Clustering clustering() const;
};

/// Member minimizing H(p) + sum_{q in cluster} H_mod(q | p); ties go to the
/// lowest index. Throws std::invalid_argument on an empty cluster.
std::size_t find_mode_exact(std::span<const std::size_t> members, const EntropyCache& cache);

/// As find_mode_exact, but the sum runs over a sample X of sample_size members
/// drawn without replacement and is scaled by |C| / |X|. Equals the exact
/// search when the cluster is no larger than the sample.
std::size_t find_mode_sampled(std::span<const std::size_t> members, const EntropyCache& cache,
                              std::size_t sample_size, std::mt19937_64& rng);

/// Greedy merge-split optimizer of the penalized description length.
///
/// Each step proposes one of four moves chosen uniformly at random and keeps
/// the candidate only if it strictly lowers the total.
class MergeSplitEngine {
 public:
  using AcceptObserver = std::function<void(const EngineState&, std::size_t step)>;

  /// Starts from params.k0 random clusters of (nearly) equal size.
  MergeSplitEngine(const EntropyCache& cache, EngineParams params);
  /// Starts from a given clustering; its modes are kept as supplied.
  MergeSplitEngine(const EntropyCache& cache, EngineParams params, const Clustering& initial);

  const EngineState& state() const noexcept { return state_; }
  const EngineParams& params() const noexcept { return params_; }
  std::mt19937_64& rng() noexcept { return rng_; }

  /// Random proposals. std::nullopt means the move was skipped.
  std::optional<EngineState> propose(MoveKind kind);
  std::optional<EngineState> propose_reassign();
  std::optional<EngineState> propose_merge();
  std::optional<EngineState> propose_split();
  std::optional<EngineState> propose_merge_split();

  /// Move 1 for a chosen partition; std::nullopt when it already sits with
  /// its closest mode.
  std::optional<EngineState> reassign(std::size_t partition);
  /// Move 2 for a chosen pair of cluster ids.
  EngineState merge(std::size_t first, std::size_t second);
  /// Move 3 on cluster `cluster`, seeded with two of its members. The first
  /// part keeps the cluster id, the second is appended. A member equidistant
  /// from both modes stays on its current side, initially the first.
  EngineState split(std::size_t cluster, std::size_t seed_a, std::size_t seed_b);
  /// Move 4: merge two clusters, then split the union from two of its members.
  /// The parts take the two ids; ties start from each member's old cluster.
  EngineState merge_split(std::size_t first, std::size_t second, std::size_t seed_a, std::size_t seed_b);

  /// Accept the candidate iff its total is strictly lower. Returns acceptance.
  bool offer(EngineState candidate);

  /// One random proposal plus the acceptance test.
  TraceEntry step();

  /// Runs until `patience` consecutive rejections (or max_moves).
  ClusteringResult run(const AcceptObserver& on_accept = {});

  /// Mode search used by every move: exact for small clusters, sampled otherwise.
  std::size_t find_mode(std::span<const std::size_t> members);
  double cluster_cost(std::span<const std::size_t> members, std::size_t mode) const;
  double total_of(const EngineState& state) const;

 private:
  ClusterState make_cluster(std::vector<std::size_t> members);
  void split_members(const std::vector<std::size_t>& members, std::size_t seed_a, std::size_t seed_b,
                     std::vector<bool> side, ClusterState& out_a, ClusterState& out_b);
  void finish(EngineState& state) const;

  const EntropyCache* cache_;
  EngineParams params_;
  std::mt19937_64 rng_;
  double scale_;
  EngineState state_;
  std::size_t steps_ = 0;
};

/// Sorts clusters by weight and assembles the reported result.
ClusteringResult make_result(const EntropyCache& cache, const EngineState& state, double lambda,
                             std::vector<TraceEntry> trace = {});

/// Full optimization with restarts. Throws std::invalid_argument on an empty set.
ClusteringResult run(const PartitionSet& set, const EngineParams& params,
                     const MergeSplitEngine::AcceptObserver& on_accept = {});
ClusteringResult run(const EntropyCache& cache, const EngineParams& params,
                     const MergeSplitEngine::AcceptObserver& on_accept = {});

}  // namespace partmodes
