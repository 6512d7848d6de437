#include "partmodes/graph.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace partmodes {

namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
}

GeneratedGraph block_model(const std::vector<std::size_t>& group_of,
                           const std::function<double(std::size_t, std::size_t)>& prob, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  const std::size_t n = group_of.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // Always draw so the stream does not depend on the probabilities.
      const double u = unit(rng);
      if (u < prob(group_of[i], group_of[j])) edges.emplace_back(i, j);
    }
  }
  return {Graph(n, std::move(edges)), canonicalize(group_of)};
}

}  // namespace

Graph::Graph(std::size_t num_nodes, std::vector<std::pair<std::size_t, std::size_t>> edges)
    : num_nodes_(num_nodes), edges_(std::move(edges)) {
  for (auto& [u, v] : edges_) {
    if (u == v) throw std::invalid_argument("self-loop on node " + std::to_string(u));
    if (u >= num_nodes_ || v >= num_nodes_) throw std::invalid_argument("node id out of range");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto it = std::adjacent_find(edges_.begin(), edges_.end()); it != edges_.end()) {
    throw std::invalid_argument("duplicate edge " + std::to_string(it->first) + " " + std::to_string(it->second));
  }
}

std::vector<std::vector<std::size_t>> Graph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(num_nodes_);
  for (auto [u, v] : edges_) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> deg(num_nodes_, 0);
  for (auto [u, v] : edges_) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

bool Graph::connected() const {
  if (num_nodes_ == 0) return true;
  const auto adj = adjacency();
  std::vector<bool> seen(num_nodes_, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t visited = 1;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++visited;
        stack.push_back(v);
      }
    }
  }
  return visited == num_nodes_;
}

MixingMatrix::MixingMatrix(std::vector<std::vector<double>> omega) : omega_(std::move(omega)) {
  for (std::size_t r = 0; r < omega_.size(); ++r) {
    if (omega_[r].size() != omega_.size()) throw std::invalid_argument("mixing matrix must be square");
    for (std::size_t s = 0; s < omega_.size(); ++s) {
      check_probability(omega_[r][s], "mixing matrix entries");
    }
  }
  for (std::size_t r = 0; r < omega_.size(); ++r) {
    for (std::size_t s = 0; s < r; ++s) {
      if (omega_[r][s] != omega_[s][r]) throw std::invalid_argument("mixing matrix must be symmetric");
    }
  }
}

MixingMatrix MixingMatrix::nested(double p_s, double p_m, double p_b) {
  return MixingMatrix({{p_s, p_m, p_b}, {p_m, p_s, p_b}, {p_b, p_b, p_s}});
}

GeneratedGraph planted_partition(std::size_t num_nodes, std::size_t groups, double p_in, double p_out,
                                 std::uint64_t seed) {
  if (groups == 0 || num_nodes == 0 || num_nodes % groups != 0) {
    throw std::invalid_argument("number of groups must divide the number of nodes");
  }
  check_probability(p_in, "p_in");
  check_probability(p_out, "p_out");
  const std::size_t size = num_nodes / groups;
  std::vector<std::size_t> group_of(num_nodes);
  for (std::size_t i = 0; i < num_nodes; ++i) group_of[i] = i / size;
  return block_model(group_of, [&](std::size_t a, std::size_t b) { return a == b ? p_in : p_out; }, seed);
}

GeneratedGraph sbm(const std::vector<std::size_t>& group_sizes, const MixingMatrix& omega, std::uint64_t seed) {
  if (group_sizes.size() != omega.size()) {
    throw std::invalid_argument("mixing matrix dimension does not match the number of groups");
  }
  std::vector<std::size_t> group_of;
  for (std::size_t g = 0; g < group_sizes.size(); ++g) {
    if (group_sizes[g] == 0) throw std::invalid_argument("group sizes must be positive");
    group_of.insert(group_of.end(), group_sizes[g], g);
  }
  if (group_of.empty()) throw std::invalid_argument("no nodes");
  return block_model(group_of, [&](std::size_t a, std::size_t b) { return omega(a, b); }, seed);
}

GeneratedGraph ring_of_cliques(std::size_t num_cliques, std::size_t clique_size) {
  if (num_cliques < 3) throw std::invalid_argument("ring of cliques needs at least 3 cliques");
  if (clique_size < 2) throw std::invalid_argument("clique size must be at least 2");
  const std::size_t n = num_cliques * clique_size;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::size_t> group_of(n);
  for (std::size_t c = 0; c < num_cliques; ++c) {
    const std::size_t base = c * clique_size;
    for (std::size_t i = 0; i < clique_size; ++i) {
      group_of[base + i] = c;
      for (std::size_t j = i + 1; j < clique_size; ++j) edges.emplace_back(base + i, base + j);
    }
    const std::size_t next = ((c + 1) % num_cliques) * clique_size;
    edges.emplace_back(base + clique_size - 1, next);
  }
  return {Graph(n, std::move(edges)), canonicalize(group_of)};
}

Graph parse_edge_list(const std::string& text, std::size_t num_nodes) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::size_t max_id = 0;
  std::size_t declared = 0;
  bool any = false;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      // "# nodes <N>" declares the node count so isolated nodes survive a round trip.
      std::istringstream comment(line.substr(hash + 1));
      std::string key;
      std::size_t value = 0;
      if (comment >> key >> value && key == "nodes") declared = value;
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a)) continue;
    if (!(fields >> b) || (fields >> extra)) fail("expected two node ids");
    long long u = 0, v = 0;
    try {
      std::size_t pos_a = 0, pos_b = 0;
      u = std::stoll(a, &pos_a);
      v = std::stoll(b, &pos_b);
      if (pos_a != a.size() || pos_b != b.size()) fail("non-integer node id");
    } catch (const std::logic_error&) {
      fail("non-integer node id");
    }
    if (u < 0 || v < 0) fail("negative node id");
    if (u == v) fail("self-loop");
    const std::size_t limit = num_nodes != 0 ? num_nodes : declared;
    if (limit != 0 && (static_cast<std::size_t>(u) >= limit || static_cast<std::size_t>(v) >= limit)) {
      fail("node id out of range");
    }
    const std::pair<std::size_t, std::size_t> edge{static_cast<std::size_t>(std::min(u, v)),
                                                   static_cast<std::size_t>(std::max(u, v))};
    if (!seen.insert(edge).second) fail("duplicate edge");
    edges.push_back(edge);
    max_id = std::max(max_id, edge.second);
    any = true;
  }
  const std::size_t n = num_nodes != 0 ? num_nodes : std::max(declared, any ? max_id + 1 : 0);
  return Graph(n, std::move(edges));
}

Graph read_edge_list(const std::filesystem::path& path, std::size_t num_nodes) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_edge_list(buffer.str(), num_nodes);
}

void write_edge_list(const Graph& graph, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "# nodes " << graph.num_nodes() << " edges " << graph.num_edges() << '\n';
  for (auto [u, v] : graph.edges()) out << u << ' ' << v << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace partmodes
