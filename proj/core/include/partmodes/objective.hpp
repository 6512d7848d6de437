#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "partmodes/partition.hpp"
#include "partmodes/table_count.hpp"

namespace partmodes {

/// Assignment of the S partitions of a set to K clusters, each represented by
/// one of its own members (the mode).
struct Clustering {
  std::vector<std::size_t> assignment;  // partition index -> cluster id
  std::vector<std::size_t> mode_index;  // cluster id -> partition index

  std::size_t num_clusters() const noexcept { return mode_index.size(); }
  std::vector<Count> cluster_sizes() const;
  std::vector<std::vector<std::size_t>> members() const;
};

/// Throws std::invalid_argument unless every cluster is non-empty, ids are in
/// range, and each mode belongs to its own cluster.
void validate(const Clustering& clustering, std::size_t num_partitions);

/// The penalized description length, term by term, in bits per sample.
struct ObjectiveBreakdown {
  double mode_entropy = 0.0;    // (N/S) sum_k H(mode_k)
  double cluster_labels = 0.0;  // H(c)
  double conditional = 0.0;     // (N/S) sum_k sum_{p in C_k} H_mod(p | mode_k)
  double penalty = 0.0;         // lambda * K
  double total = 0.0;
  std::vector<double> weights;  // c_k / S
};

/// Exact four-part encoding length in bits (not normalized by S).
struct EncodingLength {
  double l1 = 0.0;  // community-size vectors
  double l2 = 0.0;  // mode labels
  double l3 = 0.0;  // cluster sizes and memberships
  double l4 = 0.0;  // contingency tables and member labels, modes included
  double total = 0.0;

  /// (L2 + L3 + L4) / S, comparable with the unpenalized total.
  double per_sample(std::size_t num_partitions) const {
    return (l2 + l3 + l4) / static_cast<double>(num_partitions);
  }
};

/// Memoized entropies and modified conditional entropies over one
/// PartitionSet, which must outlive the cache. Lookups may run concurrently.
/// Pair values are stored in one dense column of S entries per mode; once
/// mode_columns columns exist they are all dropped.
class EntropyCache {
 public:
  explicit EntropyCache(const PartitionSet& set, OmegaOptions options = {}, std::size_t mode_columns = 256);

  const PartitionSet& set() const noexcept { return *set_; }
  const OmegaOptions& omega_options() const noexcept { return options_; }

  double entropy(std::size_t p) const noexcept { return entropies_[p]; }
  /// H_mod(p | mode), bits per node.
  double modified_conditional(std::size_t p, std::size_t mode) const;
  /// As modified_conditional, without storing the pair. Meant for pairs that
  /// are unlikely to recur, such as candidate modes.
  double evaluate_modified_conditional(std::size_t p, std::size_t mode) const;
  /// log2 Omega for the margins of partitions p and q.
  double log2_omega(std::size_t p, std::size_t q) const;

  std::size_t pair_entries() const;
  std::size_t mode_columns() const;

 private:

  const PartitionSet* set_;
  OmegaOptions options_;
  std::vector<double> entropies_;
  std::vector<double> log2_int_;
  std::vector<std::uint32_t> margin_id_;
  std::vector<std::vector<Count>> margins_;

  using Column = std::vector<std::atomic<double>>;
  std::shared_ptr<Column> column(std::size_t mode) const;

  std::size_t max_columns_;
  mutable std::shared_mutex pair_mutex_;
  mutable std::unordered_map<std::size_t, std::shared_ptr<Column>> columns_;
  mutable std::shared_mutex omega_mutex_;
  mutable std::unordered_map<std::uint64_t, double> omega_;
};

/// -sum_k (c_k/S) log2(c_k/S). Throws if the sizes do not sum to S or one is zero.
double cluster_label_entropy(std::span<const Count> cluster_sizes, Count num_partitions);

/// Penalized description length per sample. Without a cache every term is
/// recomputed from the partitions.
ObjectiveBreakdown description_length(const PartitionSet& set, const Clustering& clustering,
                                      double lambda, const EntropyCache* cache = nullptr);
ObjectiveBreakdown description_length(const PartitionSet& set, const Clustering& clustering,
                                      double lambda, const OmegaOptions& options);

/// Exact encoding length using log-factorials rather than entropies.
EncodingLength full_description_length(const PartitionSet& set, const Clustering& clustering,
                                       const OmegaOptions& options = {});

}  // namespace partmodes
