#pragma once

#include <concepts>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <ranges>
#include <vector>

namespace partmodes {

using Label = std::int32_t;
using Count = std::int64_t;

/// A division of N nodes into communities.
///
/// Labels are always canonical: communities are numbered 0..n-1 in order of
/// first appearance and none is empty, so two partitions inducing the same
/// set partition compare equal.
class Partition {
 public:
  Partition() = default;

  /// Build from labels that are already canonical. Throws if they are not.
  static Partition from_canonical(std::vector<Label> labels);

  std::size_t num_nodes() const noexcept { return labels_.size(); }
  std::size_t num_communities() const noexcept { return counts_.size(); }
  const std::vector<Label>& labels() const noexcept { return labels_; }
  /// Community sizes a_r, indexed by canonical label.
  const std::vector<Count>& counts() const noexcept { return counts_; }
  Label operator[](std::size_t node) const { return labels_[node]; }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  friend Partition canonicalize_raw(const std::vector<std::int64_t>& raw);
  Partition(std::vector<Label> labels, std::vector<Count> counts)
      : labels_(std::move(labels)), counts_(std::move(counts)) {}

  std::vector<Label> labels_;
  std::vector<Count> counts_;
};

/// Relabel arbitrary integer labels by first appearance. Throws
/// std::invalid_argument("empty partition") on empty input.
Partition canonicalize_raw(const std::vector<std::int64_t>& raw);

template <std::ranges::input_range R>
  requires std::integral<std::ranges::range_value_t<R>>
Partition canonicalize(const R& raw_labels) {
  std::vector<std::int64_t> raw;
  if constexpr (std::ranges::sized_range<R>) raw.reserve(std::ranges::size(raw_labels));
  for (auto v : raw_labels) raw.push_back(static_cast<std::int64_t>(v));
  return canonicalize_raw(raw);
}

inline Partition canonicalize(std::initializer_list<std::int64_t> raw_labels) {
  return canonicalize_raw(std::vector<std::int64_t>(raw_labels));
}

/// Ordered collection of S >= 1 partitions over a shared node set.
class PartitionSet {
 public:
  PartitionSet() = default;
  /// Throws std::invalid_argument if empty or if node counts differ.
  explicit PartitionSet(std::vector<Partition> partitions);

  std::size_t size() const noexcept { return partitions_.size(); }
  std::size_t num_nodes() const noexcept { return num_nodes_; }
  bool empty() const noexcept { return partitions_.empty(); }

  const Partition& operator[](std::size_t i) const { return partitions_[i]; }
  const std::vector<Partition>& partitions() const noexcept { return partitions_; }
  auto begin() const noexcept { return partitions_.begin(); }
  auto end() const noexcept { return partitions_.end(); }

  /// The set concatenated with itself `copies` times.
  PartitionSet repeated(std::size_t copies) const;

 private:
  std::vector<Partition> partitions_;
  std::size_t num_nodes_ = 0;
};

}  // namespace partmodes
