#include "partmodes/engine.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace partmodes {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// Two distinct uniformly random values in [0, n).
std::pair<std::size_t, std::size_t> distinct_pair(std::mt19937_64& rng, std::size_t n) {
  const std::size_t a = uniform_index(rng, n);
  std::size_t b = uniform_index(rng, n - 1);
  if (b >= a) ++b;
  return {a, b};
}

std::vector<std::size_t> merged(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::string_view to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::reassign: return "reassign";
    case MoveKind::merge: return "merge";
    case MoveKind::split: return "split";
    case MoveKind::merge_split: return "merge_split";
  }
  return "unknown";
}

void EngineParams::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be a non-negative number");
  if (k0 < 1) throw std::invalid_argument("k0 must be at least 1");
  if (mode_sample_size < 1) throw std::invalid_argument("mode sample size must be at least 1");
  if (patience < 1) throw std::invalid_argument("patience must be at least 1");
  if (max_kmeans_iters < 1) throw std::invalid_argument("max k-means iterations must be at least 1");
  if (restarts < 1) throw std::invalid_argument("restarts must be at least 1");
}

Clustering EngineState::clustering() const {
  Clustering c;
  c.assignment = assignment;
  c.mode_index.reserve(clusters.size());
  for (const auto& cl : clusters) c.mode_index.push_back(cl.mode);
  return c;
}

std::size_t find_mode_exact(std::span<const std::size_t> members, const EntropyCache& cache) {
  if (members.empty()) throw std::invalid_argument("empty cluster");
  std::size_t best = members.front();
  double best_score = std::numeric_limits<double>::infinity();
  for (std::size_t p : members) {
    double score = 0.0;
    for (std::size_t q : members) score += cache.evaluate_modified_conditional(q, p);
    score += cache.entropy(p);
    if (score < best_score || (score == best_score && p < best)) {
      best_score = score;
      best = p;
    }
  }
  return best;
}

std::size_t find_mode_sampled(std::span<const std::size_t> members, const EntropyCache& cache,
                              std::size_t sample_size, std::mt19937_64& rng) {
  if (members.empty()) throw std::invalid_argument("empty cluster");
  if (sample_size == 0) throw std::invalid_argument("mode sample size must be at least 1");
  if (members.size() <= sample_size) return find_mode_exact(members, cache);

  std::vector<std::size_t> sample;
  sample.reserve(sample_size);
  std::sample(members.begin(), members.end(), std::back_inserter(sample), sample_size, rng);
  const double weight = static_cast<double>(members.size()) / static_cast<double>(sample.size());

  std::size_t best = members.front();
  double best_score = std::numeric_limits<double>::infinity();
  for (std::size_t p : members) {
    double sum = 0.0;
    for (std::size_t q : sample) sum += cache.evaluate_modified_conditional(q, p);
    const double score = cache.entropy(p) + weight * sum;
    if (score < best_score || (score == best_score && p < best)) {
      best_score = score;
      best = p;
    }
  }
  return best;
}

MergeSplitEngine::MergeSplitEngine(const EntropyCache& cache, EngineParams params)
    : cache_(&cache), params_(std::move(params)), rng_(params_.seed) {
  params_.validate();
  const PartitionSet& set = cache.set();
  if (set.empty()) throw std::invalid_argument("empty partition set");
  scale_ = static_cast<double>(set.num_nodes()) / static_cast<double>(set.size());

  const std::size_t s = set.size();
  const std::size_t k0 = std::min(params_.k0, s);
  std::vector<std::size_t> order(s);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng_);
  std::vector<std::vector<std::size_t>> groups(k0);
  for (std::size_t i = 0; i < s; ++i) groups[i % k0].push_back(order[i]);

  state_.assignment.assign(s, 0);
  for (auto& g : groups) {
    std::sort(g.begin(), g.end());
    state_.clusters.push_back(make_cluster(std::move(g)));
  }
  finish(state_);
}

MergeSplitEngine::MergeSplitEngine(const EntropyCache& cache, EngineParams params, const Clustering& initial)
    : cache_(&cache), params_(std::move(params)), rng_(params_.seed) {
  params_.validate();
  const PartitionSet& set = cache.set();
  validate(initial, set.size());
  scale_ = static_cast<double>(set.num_nodes()) / static_cast<double>(set.size());
  auto groups = initial.members();
  state_.assignment.assign(set.size(), 0);
  for (std::size_t k = 0; k < groups.size(); ++k) {
    ClusterState cl;
    cl.mode = initial.mode_index[k];
    cl.cost = cluster_cost(groups[k], cl.mode);
    cl.members = std::move(groups[k]);
    state_.clusters.push_back(std::move(cl));
  }
  finish(state_);
}

std::size_t MergeSplitEngine::find_mode(std::span<const std::size_t> members) {
  if (members.size() <= params_.exact_mode_threshold) return find_mode_exact(members, *cache_);
  return find_mode_sampled(members, *cache_, params_.mode_sample_size, rng_);
}

double MergeSplitEngine::cluster_cost(std::span<const std::size_t> members, std::size_t mode) const {
  double sum = cache_->entropy(mode);
  for (std::size_t q : members) sum += cache_->modified_conditional(q, mode);
  return scale_ * sum;
}

double MergeSplitEngine::total_of(const EngineState& state) const {
  double costs = 0.0;
  std::vector<Count> sizes;
  sizes.reserve(state.clusters.size());
  for (const auto& cl : state.clusters) {
    costs += cl.cost;
    sizes.push_back(static_cast<Count>(cl.members.size()));
  }
  return costs + cluster_label_entropy(sizes, static_cast<Count>(state.assignment.size())) +
         params_.lambda * static_cast<double>(state.clusters.size());
}

ClusterState MergeSplitEngine::make_cluster(std::vector<std::size_t> members) {
  ClusterState cl;
  cl.mode = find_mode(members);
  cl.cost = cluster_cost(members, cl.mode);
  cl.members = std::move(members);
  return cl;
}

void MergeSplitEngine::finish(EngineState& state) const {
  for (std::size_t k = 0; k < state.clusters.size(); ++k) {
    for (std::size_t p : state.clusters[k].members) state.assignment[p] = k;
  }
  state.total = total_of(state);
}

std::optional<EngineState> MergeSplitEngine::reassign(std::size_t partition) {
  const std::size_t from = state_.assignment.at(partition);
  std::size_t target = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < state_.clusters.size(); ++k) {
    const double d = cache_->modified_conditional(partition, state_.clusters[k].mode);
    if (d < best) {
      best = d;
      target = k;
    }
  }
  if (target == from) return std::nullopt;

  EngineState next = state_;
  auto& origin = next.clusters[from].members;
  origin.erase(std::lower_bound(origin.begin(), origin.end(), partition));
  auto& dest = next.clusters[target].members;
  dest.insert(std::upper_bound(dest.begin(), dest.end(), partition), partition);
  next.clusters[target] = make_cluster(std::move(dest));
  if (origin.empty()) {
    next.clusters.erase(next.clusters.begin() + static_cast<std::ptrdiff_t>(from));
  } else {
    next.clusters[from] = make_cluster(std::move(origin));
  }
  finish(next);
  return next;
}

EngineState MergeSplitEngine::merge(std::size_t first, std::size_t second) {
  if (first == second || first >= state_.clusters.size() || second >= state_.clusters.size()) {
    throw std::invalid_argument("merge needs two distinct existing clusters");
  }
  const std::size_t lo = std::min(first, second), hi = std::max(first, second);
  EngineState next = state_;
  next.clusters[lo] = make_cluster(merged(state_.clusters[lo].members, state_.clusters[hi].members));
  next.clusters.erase(next.clusters.begin() + static_cast<std::ptrdiff_t>(hi));
  finish(next);
  return next;
}

void MergeSplitEngine::split_members(const std::vector<std::size_t>& members, std::size_t seed_a,
                                     std::size_t seed_b, std::vector<bool> side, ClusterState& out_a,
                                     ClusterState& out_b) {
  std::size_t mode_a = seed_a, mode_b = seed_b;
  // side[i] true means B. Each provisional mode stays on its own side, so
  // neither side is ever empty, and a tie leaves a member where it was.
  auto assign = [&](std::vector<bool>& out) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      const std::size_t q = members[i];
      if (q == mode_a) {
        out[i] = false;
      } else if (q == mode_b) {
        out[i] = true;
      } else {
        const double da = cache_->modified_conditional(q, mode_a), db = cache_->modified_conditional(q, mode_b);
        if (da != db) out[i] = db < da;
      }
    }
  };
  auto gather = [&](const std::vector<bool>& s, bool which) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (s[i] == which) out.push_back(members[i]);
    }
    return out;
  };

  assign(side);
  std::vector<bool> next_side = side;
  bool converged = false;
  for (std::size_t iter = 0; iter < params_.max_kmeans_iters; ++iter) {
    mode_a = find_mode(gather(side, false));
    mode_b = find_mode(gather(side, true));
    next_side = side;
    assign(next_side);
    if (next_side == side) {
      converged = true;
      break;
    }
    side.swap(next_side);
  }
  auto a = gather(side, false), b = gather(side, true);
  if (!converged) {
    mode_a = find_mode(a);
    mode_b = find_mode(b);
  }
  out_a.mode = mode_a;
  out_a.cost = cluster_cost(a, mode_a);
  out_a.members = std::move(a);
  out_b.mode = mode_b;
  out_b.cost = cluster_cost(b, mode_b);
  out_b.members = std::move(b);
}

EngineState MergeSplitEngine::split(std::size_t cluster, std::size_t seed_a, std::size_t seed_b) {
  const auto& members = state_.clusters.at(cluster).members;
  auto contains = [&](std::size_t p) { return std::binary_search(members.begin(), members.end(), p); };
  if (seed_a == seed_b || !contains(seed_a) || !contains(seed_b)) {
    throw std::invalid_argument("split seeds must be two distinct members of the cluster");
  }
  EngineState next = state_;
  ClusterState a, b;
  split_members(members, seed_a, seed_b, std::vector<bool>(members.size(), false), a, b);
  next.clusters[cluster] = std::move(a);
  next.clusters.push_back(std::move(b));
  finish(next);
  return next;
}

EngineState MergeSplitEngine::merge_split(std::size_t first, std::size_t second, std::size_t seed_a,
                                          std::size_t seed_b) {
  if (first == second || first >= state_.clusters.size() || second >= state_.clusters.size()) {
    throw std::invalid_argument("merge-split needs two distinct existing clusters");
  }
  const std::size_t lo = std::min(first, second), hi = std::max(first, second);
  const auto all = merged(state_.clusters[lo].members, state_.clusters[hi].members);
  auto contains = [&](std::size_t p) { return std::binary_search(all.begin(), all.end(), p); };
  if (seed_a == seed_b || !contains(seed_a) || !contains(seed_b)) {
    throw std::invalid_argument("split seeds must be two distinct members of the merged cluster");
  }
  std::vector<bool> origin(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) origin[i] = state_.assignment[all[i]] == hi;
  EngineState next = state_;
  split_members(all, seed_a, seed_b, std::move(origin), next.clusters[lo], next.clusters[hi]);
  finish(next);
  return next;
}

std::optional<EngineState> MergeSplitEngine::propose_reassign() {
  return reassign(uniform_index(rng_, state_.assignment.size()));
}

std::optional<EngineState> MergeSplitEngine::propose_merge() {
  if (state_.clusters.size() < 2) return std::nullopt;
  const auto [a, b] = distinct_pair(rng_, state_.clusters.size());
  return merge(a, b);
}

std::optional<EngineState> MergeSplitEngine::propose_split() {
  const std::size_t k = uniform_index(rng_, state_.clusters.size());
  const auto& members = state_.clusters[k].members;
  if (members.size() < 2) return std::nullopt;
  const auto [i, j] = distinct_pair(rng_, members.size());
  return split(k, members[i], members[j]);
}

std::optional<EngineState> MergeSplitEngine::propose_merge_split() {
  if (state_.clusters.size() < 2) return std::nullopt;
  const auto [a, b] = distinct_pair(rng_, state_.clusters.size());
  const auto all = merged(state_.clusters[a].members, state_.clusters[b].members);
  const auto [i, j] = distinct_pair(rng_, all.size());
  return merge_split(a, b, all[i], all[j]);
}

std::optional<EngineState> MergeSplitEngine::propose(MoveKind kind) {
  switch (kind) {
    case MoveKind::reassign: return propose_reassign();
    case MoveKind::merge: return propose_merge();
    case MoveKind::split: return propose_split();
    case MoveKind::merge_split: return propose_merge_split();
  }
  return std::nullopt;
}

bool MergeSplitEngine::offer(EngineState candidate) {
  // Equal totals are rejected; the slack only absorbs summation-order noise.
  const double slack = 1e-12 * std::max(1.0, std::abs(state_.total));
  if (candidate.total < state_.total - slack) {
    state_ = std::move(candidate);
    return true;
  }
  return false;
}

TraceEntry MergeSplitEngine::step() {
  TraceEntry entry;
  entry.step = ++steps_;
  entry.move = static_cast<MoveKind>(uniform_index(rng_, 4));
  auto candidate = propose(entry.move);
  if (!candidate) {
    entry.skipped = true;
  } else {
    entry.accepted = offer(std::move(*candidate));
  }
  entry.total = state_.total;
  return entry;
}

ClusteringResult MergeSplitEngine::run(const AcceptObserver& on_accept) {
  std::vector<TraceEntry> trace;
  std::size_t rejected = 0;
  while (rejected < params_.patience && (params_.max_moves == 0 || trace.size() < params_.max_moves)) {
    trace.push_back(step());
    if (trace.back().accepted) {
      rejected = 0;
      if (on_accept) on_accept(state_, trace.back().step);
    } else {
      ++rejected;
    }
  }
  return make_result(*cache_, state_, params_.lambda, std::move(trace));
}

ClusteringResult make_result(const EntropyCache& cache, const EngineState& state, double lambda,
                             std::vector<TraceEntry> trace) {
  const PartitionSet& set = cache.set();
  std::vector<std::size_t> order(state.clusters.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const auto& a = state.clusters[x];
    const auto& b = state.clusters[y];
    if (a.members.size() != b.members.size()) return a.members.size() > b.members.size();
    return a.mode < b.mode;
  });
  std::vector<std::size_t> rank(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;

  ClusteringResult result;
  result.lambda = lambda;
  result.clustering.assignment.resize(state.assignment.size());
  for (std::size_t p = 0; p < state.assignment.size(); ++p) {
    result.clustering.assignment[p] = rank[state.assignment[p]];
  }
  for (std::size_t k : order) {
    result.clustering.mode_index.push_back(state.clusters[k].mode);
    result.modes.push_back(set[state.clusters[k].mode]);
  }
  result.breakdown = description_length(set, result.clustering, lambda, &cache);
  result.weights = result.breakdown.weights;
  result.trace = std::move(trace);
  return result;
}

ClusteringResult run(const EntropyCache& cache, const EngineParams& params,
                     const MergeSplitEngine::AcceptObserver& on_accept) {
  params.validate();
  if (cache.set().empty()) throw std::invalid_argument("empty partition set");
  std::optional<ClusteringResult> best;
  for (std::size_t r = 0; r < params.restarts; ++r) {
    EngineParams p = params;
    if (r > 0) p.seed = mix_seed(params.seed, r);
    MergeSplitEngine engine(cache, p);
    ClusteringResult result = engine.run(on_accept);
    if (!best || result.breakdown.total < best->breakdown.total) best = std::move(result);
  }
  return std::move(*best);
}

ClusteringResult run(const PartitionSet& set, const EngineParams& params,
                     const MergeSplitEngine::AcceptObserver& on_accept) {
  if (set.empty()) throw std::invalid_argument("empty partition set");
  EntropyCache cache(set, params.omega);
  return run(cache, params, on_accept);
}

}  // namespace partmodes
