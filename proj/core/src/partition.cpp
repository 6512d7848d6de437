#include "partmodes/partition.hpp"

#include <stdexcept>
#include <string>
#include <unordered_map>

namespace partmodes {

Partition canonicalize_raw(const std::vector<std::int64_t>& raw) {
  if (raw.empty()) throw std::invalid_argument("empty partition");
  std::unordered_map<std::int64_t, Label> relabel;
  std::vector<Label> labels;
  std::vector<Count> counts;
  labels.reserve(raw.size());
  for (auto value : raw) {
    auto [it, inserted] = relabel.try_emplace(value, static_cast<Label>(counts.size()));
    if (inserted) counts.push_back(0);
    labels.push_back(it->second);
    ++counts[static_cast<std::size_t>(it->second)];
  }
  return Partition(std::move(labels), std::move(counts));
}

Partition Partition::from_canonical(std::vector<Label> labels) {
  std::vector<std::int64_t> raw(labels.begin(), labels.end());
  Partition p = canonicalize_raw(raw);
  if (p.labels_ != labels) throw std::invalid_argument("labels are not canonical");
  return p;
}

PartitionSet::PartitionSet(std::vector<Partition> partitions)
    : partitions_(std::move(partitions)) {
  if (partitions_.empty()) throw std::invalid_argument("empty partition set");
  num_nodes_ = partitions_.front().num_nodes();
  for (std::size_t i = 1; i < partitions_.size(); ++i) {
    if (partitions_[i].num_nodes() != num_nodes_) {
      throw std::invalid_argument("incompatible partitions: partition " + std::to_string(i) +
                                  " has " + std::to_string(partitions_[i].num_nodes()) +
                                  " nodes, expected " + std::to_string(num_nodes_));
    }
  }
}

PartitionSet PartitionSet::repeated(std::size_t copies) const {
  if (copies == 0) throw std::invalid_argument("repeated: copies must be positive");
  std::vector<Partition> out;
  out.reserve(partitions_.size() * copies);
  for (std::size_t c = 0; c < copies; ++c) out.insert(out.end(), partitions_.begin(), partitions_.end());
  return PartitionSet(std::move(out));
}

}  // namespace partmodes
