#include "partmodes/sampler.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace partmodes {

PartitionSet parse_partitions(const std::string& text, std::optional<std::size_t> expected_nodes) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<Partition> partitions;
  std::optional<std::size_t> width = expected_nodes;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::vector<std::int64_t> labels;
    std::string token;
    while (fields >> token) {
      std::size_t pos = 0;
      std::int64_t value = 0;
      try {
        value = std::stoll(token, &pos);
      } catch (const std::logic_error&) {
        pos = 0;
      }
      if (pos == 0 || pos != token.size()) {
        throw std::invalid_argument("partition line " + std::to_string(line_no) + ": non-integer label '" + token + "'");
      }
      labels.push_back(value);
    }
    if (width && labels.size() != *width) {
      throw std::invalid_argument("partition line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(*width) + " labels, found " + std::to_string(labels.size()));
    }
    width = labels.size();
    partitions.push_back(canonicalize(labels));
  }
  if (partitions.empty()) throw std::invalid_argument("no partitions in input");
  return PartitionSet(std::move(partitions));
}

PartitionSet load_partitions(const std::filesystem::path& path, std::optional<std::size_t> expected_nodes) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_partitions(buffer.str(), expected_nodes);
}

std::string format_partitions(const std::vector<Partition>& partitions) {
  std::string out;
  for (const Partition& p : partitions) {
    for (std::size_t i = 0; i < p.num_nodes(); ++i) {
      if (i != 0) out += ' ';
      out += std::to_string(p[i]);
    }
    out += '\n';
  }
  return out;
}

void write_partitions(const std::vector<Partition>& partitions, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << format_partitions(partitions);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_partitions(const PartitionSet& set, const std::filesystem::path& path) {
  write_partitions(set.partitions(), path);
}

void PerturbationSpec::validate() const {
  if (bases.empty()) throw std::invalid_argument("perturbation spec needs at least one base");
  if (samples == 0) throw std::invalid_argument("perturbation spec needs at least one sample");
  if (!(node_flip_rate >= 0.0 && node_flip_rate < 1.0)) throw std::invalid_argument("node_flip_rate must lie in [0, 1)");
  double total = 0.0;
  const std::size_t n = bases.front().partition.num_nodes();
  for (const auto& b : bases) {
    if (!(b.weight > 0.0)) throw std::invalid_argument("mixture weights must be positive");
    if (b.partition.num_nodes() != n || n == 0) throw std::invalid_argument("bases must share a non-zero node count");
    total += b.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("mixture weights must sum to 1");
  std::vector<bool> covered(n, false);
  for (const auto& unit : flip_units) {
    if (unit.empty()) throw std::invalid_argument("flip units must be non-empty");
    for (std::size_t node : unit) {
      if (node >= n || covered[node]) throw std::invalid_argument("flip units must be disjoint node sets");
      covered[node] = true;
    }
  }
}

PerturbedEnsemble perturb_ensemble(const PerturbationSpec& spec) {
  spec.validate();
  const std::size_t n = spec.bases.front().partition.num_nodes();
  std::vector<std::vector<std::size_t>> units = spec.flip_units;
  if (units.empty()) {
    units.resize(n);
    for (std::size_t i = 0; i < n; ++i) units[i] = {i};
  }
  std::vector<double> weights;
  for (const auto& b : spec.bases) weights.push_back(b.weight);

  std::mt19937_64 rng(spec.seed);
  std::discrete_distribution<std::size_t> pick_base(weights.begin(), weights.end());
  std::bernoulli_distribution flip(spec.node_flip_rate);

  PerturbedEnsemble out;
  std::vector<Partition> partitions;
  partitions.reserve(spec.samples);
  for (std::size_t s = 0; s < spec.samples; ++s) {
    const std::size_t b = pick_base(rng);
    const Partition& base = spec.bases[b].partition;
    const auto q = static_cast<Label>(base.num_communities());
    std::vector<Label> labels = base.labels();
    std::size_t flipped = 0, changed = 0;
    for (const auto& unit : units) {
      if (!flip(rng)) continue;
      // A unit spanning several communities lands whole in the new one.
      const Label target = std::uniform_int_distribution<Label>(0, q - 1)(rng);
      for (std::size_t node : unit) {
        ++flipped;
        if (labels[node] != target) ++changed;
        labels[node] = target;
      }
    }
    out.base_of.push_back(b);
    out.flipped.push_back(flipped);
    out.changed.push_back(changed);
    partitions.push_back(canonicalize(labels));
  }
  out.set = PartitionSet(std::move(partitions));
  return out;
}

double modularity(const Graph& graph, const Partition& partition) {
  if (partition.num_nodes() != graph.num_nodes()) throw std::invalid_argument("partition does not match graph");
  const double m = static_cast<double>(graph.num_edges());
  if (m == 0.0) return 0.0;
  std::vector<double> internal(partition.num_communities(), 0.0), degree(partition.num_communities(), 0.0);
  for (auto [u, v] : graph.edges()) {
    degree[static_cast<std::size_t>(partition[u])] += 1.0;
    degree[static_cast<std::size_t>(partition[v])] += 1.0;
    if (partition[u] == partition[v]) internal[static_cast<std::size_t>(partition[u])] += 1.0;
  }
  double q = 0.0;
  for (std::size_t r = 0; r < internal.size(); ++r) {
    q += internal[r] / m - (degree[r] / (2.0 * m)) * (degree[r] / (2.0 * m));
  }
  return q;
}

PartitionSet mcmc_sample(const Graph& graph, const McmcParams& params) {
  if (params.samples == 0) throw std::invalid_argument("empty partition set requested (samples = 0)");
  if (graph.num_nodes() == 0) throw std::invalid_argument("graph has no nodes");
  if (params.q_max < 1) throw std::invalid_argument("q_max must be at least 1");
  if (params.sweeps_between < 1) throw std::invalid_argument("sweeps_between must be at least 1");
  if (!(params.beta >= 0.0)) throw std::invalid_argument("beta must be non-negative");

  const std::size_t n = graph.num_nodes();
  const auto adj = graph.adjacency();
  const double m = static_cast<double>(graph.num_edges());
  const auto q = static_cast<Label>(params.q_max);

  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<Label> any_label(0, q - 1);
  std::uniform_int_distribution<std::size_t> any_node(0, n - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Label> labels(n);
  std::vector<double> group_degree(params.q_max, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = any_label(rng);
    group_degree[static_cast<std::size_t>(labels[i])] += static_cast<double>(adj[i].size());
  }

  auto sweep = [&] {
    if (q < 2) return;
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t i = any_node(rng);
      const Label from = labels[i];
      Label to = std::uniform_int_distribution<Label>(0, q - 2)(rng);
      if (to >= from) ++to;
      const double u = unit(rng);
      double delta = 0.0;
      if (m > 0.0) {
        double links_from = 0.0, links_to = 0.0;
        for (std::size_t j : adj[i]) {
          if (labels[j] == from) links_from += 1.0;
          else if (labels[j] == to) links_to += 1.0;
        }
        const double k = static_cast<double>(adj[i].size());
        const double d_from = group_degree[static_cast<std::size_t>(from)];
        const double d_to = group_degree[static_cast<std::size_t>(to)];
        delta = (links_to - links_from) / m - k * (d_to - d_from + k) / (2.0 * m * m);
      }
      if (delta >= 0.0 || u < std::exp(params.beta * delta)) {
        const double k = static_cast<double>(adj[i].size());
        group_degree[static_cast<std::size_t>(from)] -= k;
        group_degree[static_cast<std::size_t>(to)] += k;
        labels[i] = to;
      }
    }
  };

  for (std::size_t s = 0; s < 10 * params.sweeps_between; ++s) sweep();
  std::vector<Partition> out;
  out.reserve(params.samples);
  for (std::size_t k = 0; k < params.samples; ++k) {
    for (std::size_t s = 0; s < params.sweeps_between; ++s) sweep();
    out.push_back(canonicalize(labels));
  }
  return PartitionSet(std::move(out));
}

}  // namespace partmodes
