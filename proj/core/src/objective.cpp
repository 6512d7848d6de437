#include "partmodes/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "partmodes/information.hpp"
#include "partmodes/log_math.hpp"

namespace partmodes {

std::vector<Count> Clustering::cluster_sizes() const {
  std::vector<Count> sizes(num_clusters(), 0);
  for (std::size_t k : assignment) {
    if (k < sizes.size()) ++sizes[k];
  }
  return sizes;
}

std::vector<std::vector<std::size_t>> Clustering::members() const {
  std::vector<std::vector<std::size_t>> out(num_clusters());
  for (std::size_t p = 0; p < assignment.size(); ++p) {
    if (assignment[p] < out.size()) out[assignment[p]].push_back(p);
  }
  return out;
}

void validate(const Clustering& clustering, std::size_t num_partitions) {
  if (clustering.assignment.size() != num_partitions) {
    throw std::invalid_argument("invalid clustering: assignment has " +
                                std::to_string(clustering.assignment.size()) + " entries, expected " +
                                std::to_string(num_partitions));
  }
  const std::size_t k = clustering.num_clusters();
  if (k == 0) throw std::invalid_argument("invalid clustering: no clusters");
  for (std::size_t id : clustering.assignment) {
    if (id >= k) throw std::invalid_argument("invalid clustering: cluster id out of range");
  }
  const auto sizes = clustering.cluster_sizes();
  for (std::size_t c = 0; c < k; ++c) {
    if (sizes[c] == 0) throw std::invalid_argument("invalid clustering: cluster " + std::to_string(c) + " is empty");
    const std::size_t mode = clustering.mode_index[c];
    if (mode >= num_partitions || clustering.assignment[mode] != c) {
      throw std::invalid_argument("invalid clustering: mode of cluster " + std::to_string(c) +
                                  " is not one of its members");
    }
  }
}

EntropyCache::EntropyCache(const PartitionSet& set, OmegaOptions options, std::size_t mode_columns)
    : set_(&set), options_(options), max_columns_(std::max<std::size_t>(1, mode_columns)) {
  const std::size_t n = set.num_nodes();
  log2_int_.resize(n + 1, 0.0);
  for (std::size_t k = 1; k <= n; ++k) log2_int_[k] = std::log2(static_cast<double>(k));

  entropies_.reserve(set.size());
  margin_id_.reserve(set.size());
  std::map<std::vector<Count>, std::uint32_t> ids;
  for (const Partition& p : set) {
    entropies_.push_back(partmodes::entropy(p));
    std::vector<Count> sorted = p.counts();
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    auto [it, inserted] = ids.try_emplace(sorted, static_cast<std::uint32_t>(margins_.size()));
    if (inserted) margins_.push_back(std::move(sorted));
    margin_id_.push_back(it->second);
  }
}

double EntropyCache::log2_omega(std::size_t p, std::size_t q) const {
  std::uint32_t a = margin_id_[p], b = margin_id_[q];
  if (a > b) std::swap(a, b);
  const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
  {
    std::shared_lock lock(omega_mutex_);
    if (auto it = omega_.find(key); it != omega_.end()) return it->second;
  }
  const double value = log2_table_count(margins_[a], margins_[b], options_);
  std::unique_lock lock(omega_mutex_);
  omega_.emplace(key, value);
  return value;
}

double EntropyCache::evaluate_modified_conditional(std::size_t p, std::size_t mode) const {
  const Partition& part = (*set_)[p];
  const Partition& m = (*set_)[mode];
  const std::size_t cols = part.num_communities();
  thread_local std::vector<Count> cells;
  cells.assign(m.num_communities() * cols, 0);
  const auto& pl = part.labels();
  const auto& ml = m.labels();
  for (std::size_t i = 0; i < pl.size(); ++i) {
    ++cells[static_cast<std::size_t>(ml[i]) * cols + static_cast<std::size_t>(pl[i])];
  }
  double h = 0.0;
  for (std::size_t r = 0; r < m.num_communities(); ++r) {
    const double log_a = log2_int_[static_cast<std::size_t>(m.counts()[r])];
    const Count* row = cells.data() + r * cols;
    for (std::size_t s = 0; s < cols; ++s) {
      if (row[s] != 0) h -= static_cast<double>(row[s]) * (log2_int_[static_cast<std::size_t>(row[s])] - log_a);
    }
  }
  const double n = static_cast<double>(pl.size());
  return (h > 0.0 ? h / n : 0.0) + log2_omega(p, mode) / n;
}

std::shared_ptr<EntropyCache::Column> EntropyCache::column(std::size_t mode) const {
  {
    std::shared_lock lock(pair_mutex_);
    if (auto it = columns_.find(mode); it != columns_.end()) return it->second;
  }
  auto fresh = std::make_shared<Column>(set_->size());
  for (auto& v : *fresh) v.store(std::numeric_limits<double>::quiet_NaN(), std::memory_order_relaxed);
  std::unique_lock lock(pair_mutex_);
  if (auto it = columns_.find(mode); it != columns_.end()) return it->second;
  if (columns_.size() >= max_columns_) columns_.clear();
  columns_.emplace(mode, fresh);
  return fresh;
}

double EntropyCache::modified_conditional(std::size_t p, std::size_t mode) const {
  const auto col = column(mode);
  auto& slot = (*col)[p];
  double value = slot.load(std::memory_order_relaxed);
  if (std::isnan(value)) {
    value = evaluate_modified_conditional(p, mode);
    slot.store(value, std::memory_order_relaxed);
  }
  return value;
}

std::size_t EntropyCache::mode_columns() const {
  std::shared_lock lock(pair_mutex_);
  return columns_.size();
}

std::size_t EntropyCache::pair_entries() const {
  std::shared_lock lock(pair_mutex_);
  std::size_t filled = 0;
  for (const auto& [mode, col] : columns_)
    for (const auto& v : *col) filled += !std::isnan(v.load(std::memory_order_relaxed));
  return filled;
}

double cluster_label_entropy(std::span<const Count> cluster_sizes, Count num_partitions) {
  Count sum = 0;
  for (Count c : cluster_sizes) {
    if (c <= 0) throw std::invalid_argument("cluster sizes must be positive");
    sum += c;
  }
  if (sum != num_partitions || num_partitions <= 0) {
    throw std::invalid_argument("cluster sizes do not sum to the number of partitions");
  }
  const double s = static_cast<double>(num_partitions);
  double h = 0.0;
  for (Count c : cluster_sizes) h -= xlog2x(static_cast<double>(c) / s);
  return h > 0.0 ? h : 0.0;
}

namespace {

ObjectiveBreakdown assemble(const PartitionSet& set, const Clustering& clustering, double lambda,
                            const EntropyCache* cache, const OmegaOptions& options) {
  validate(clustering, set.size());
  if (lambda < 0.0) throw std::invalid_argument("lambda must be non-negative");
  if (cache != nullptr && &cache->set() != &set) throw std::invalid_argument("cache belongs to another set");

  const double scale = static_cast<double>(set.num_nodes()) / static_cast<double>(set.size());
  const auto sizes = clustering.cluster_sizes();
  const auto members = clustering.members();

  ObjectiveBreakdown out;
  double mode_sum = 0.0, cond_sum = 0.0;
  for (std::size_t k = 0; k < clustering.num_clusters(); ++k) {
    const std::size_t m = clustering.mode_index[k];
    mode_sum += cache ? cache->entropy(m) : entropy(set[m]);
    for (std::size_t p : members[k]) {
      cond_sum += cache ? cache->modified_conditional(p, m) : modified_conditional_entropy(set[p], set[m], options);
    }
  }
  out.mode_entropy = scale * mode_sum;
  out.cluster_labels = cluster_label_entropy(sizes, static_cast<Count>(set.size()));
  out.conditional = scale * cond_sum;
  out.penalty = lambda * static_cast<double>(clustering.num_clusters());
  out.total = out.mode_entropy + out.cluster_labels + out.conditional + out.penalty;
  out.weights.reserve(sizes.size());
  for (Count c : sizes) out.weights.push_back(static_cast<double>(c) / static_cast<double>(set.size()));
  return out;
}

}  // namespace

ObjectiveBreakdown description_length(const PartitionSet& set, const Clustering& clustering,
                                      double lambda, const EntropyCache* cache) {
  return assemble(set, clustering, lambda, cache, cache ? cache->omega_options() : OmegaOptions{});
}

ObjectiveBreakdown description_length(const PartitionSet& set, const Clustering& clustering,
                                      double lambda, const OmegaOptions& options) {
  return assemble(set, clustering, lambda, nullptr, options);
}

EncodingLength full_description_length(const PartitionSet& set, const Clustering& clustering,
                                       const OmegaOptions& options) {
  validate(clustering, set.size());
  const auto n = static_cast<Count>(set.num_nodes());
  const auto s = static_cast<Count>(set.size());
  const auto k = static_cast<Count>(clustering.num_clusters());
  const auto members = clustering.members();

  EncodingLength out;
  for (const Partition& p : set) {
    out.l1 += log2_binomial(n - 1, static_cast<Count>(p.num_communities()) - 1);
  }
  for (std::size_t c = 0; c < members.size(); ++c) {
    const Partition& mode = set[clustering.mode_index[c]];
    double mode_bits = log2_factorial(n);
    double row_bits = 0.0;
    for (Count a : mode.counts()) {
      mode_bits -= log2_factorial(a);
      row_bits += log2_factorial(a);
    }
    out.l2 += mode_bits;
    for (std::size_t p : members[c]) {
      const ContingencyTable t = contingency_table(mode, set[p]);
      double bits = row_bits;
      for (Count cell : t.cells) bits -= log2_factorial(cell);
      out.l4 += bits + log2_table_count(t.row_sums, t.col_sums, options);
    }
  }
  out.l3 = log2_binomial(s - 1, k - 1) + log2_factorial(s);
  for (Count c : clustering.cluster_sizes()) out.l3 -= log2_factorial(c);
  out.total = out.l1 + out.l2 + out.l3 + out.l4;
  return out;
}

}  // namespace partmodes
