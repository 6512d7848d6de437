#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "partmodes/partition.hpp"

namespace partmodes {

/// Simple undirected graph. Edges are stored once as (u, v) with u < v, sorted.
class Graph {
 public:
  Graph() = default;
  /// Throws std::invalid_argument on self-loops, duplicates or ids >= num_nodes.
  Graph(std::size_t num_nodes, std::vector<std::pair<std::size_t, std::size_t>> edges);

  std::size_t num_nodes() const noexcept { return num_nodes_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }

  std::vector<std::vector<std::size_t>> adjacency() const;
  std::vector<std::size_t> degrees() const;
  bool connected() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t num_nodes_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

/// Symmetric matrix of between-group edge probabilities.
class MixingMatrix {
 public:
  /// Throws unless square, symmetric and entries lie in [0, 1].
  explicit MixingMatrix(std::vector<std::vector<double>> omega);

  /// The nested three-group form: p_s on the diagonal, p_m between groups 0
  /// and 1, p_b between group 2 and the others.
  static MixingMatrix nested(double p_s, double p_m, double p_b);

  std::size_t size() const noexcept { return omega_.size(); }
  double operator()(std::size_t r, std::size_t s) const { return omega_[r][s]; }

 private:
  std::vector<std::vector<double>> omega_;
};

struct GeneratedGraph {
  Graph graph;
  Partition truth;
};

/// q equal groups of N/q nodes; edges with p_in inside groups, p_out between.
GeneratedGraph planted_partition(std::size_t num_nodes, std::size_t groups, double p_in, double p_out,
                                 std::uint64_t seed);

/// Stochastic block model with contiguous groups of the given sizes.
GeneratedGraph sbm(const std::vector<std::size_t>& group_sizes, const MixingMatrix& omega, std::uint64_t seed);

/// num_cliques complete graphs of clique_size nodes joined in a cycle: the
/// last node of clique i links to the first node of clique i+1.
GeneratedGraph ring_of_cliques(std::size_t num_cliques, std::size_t clique_size);

/// Whitespace-separated integer pairs, '#' comments. The node count is
/// 1 + the largest id unless num_nodes is given. Errors name the line.
Graph read_edge_list(const std::filesystem::path& path, std::size_t num_nodes = 0);
Graph parse_edge_list(const std::string& text, std::size_t num_nodes = 0);
void write_edge_list(const Graph& graph, const std::filesystem::path& path);

}  // namespace partmodes
