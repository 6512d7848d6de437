#include "partmodes/serialize.hpp"

#include <stdexcept>

#include "json.hpp"

namespace partmodes {

using nlohmann::json;

namespace {

json breakdown_json(const ObjectiveBreakdown& b) {
  return json{{"mode_entropy", b.mode_entropy}, {"cluster_labels", b.cluster_labels},
              {"conditional", b.conditional},   {"penalty", b.penalty},
              {"total", b.total},               {"weights", b.weights}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

template <class T>
T field(const json& j, const char* name) {
  if (!j.contains(name)) throw std::invalid_argument(std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("field '") + name + "' has the wrong type");
  }
}

}  // namespace

std::string to_json(const ObjectiveBreakdown& breakdown) { return dump(breakdown_json(breakdown)); }

std::string to_json(const EncodingLength& length) {
  return dump(json{{"l1", length.l1}, {"l2", length.l2}, {"l3", length.l3}, {"l4", length.l4}, {"total", length.total}});
}

std::string to_json(const Graph& graph) {
  json edges = json::array();
  for (auto [u, v] : graph.edges()) edges.push_back({u, v});
  return dump(json{{"N", graph.num_nodes()}, {"edges", std::move(edges)}});
}

std::string to_json(const ClusteringResult& result, bool include_trace) {
  json modes = json::array();
  for (const Partition& m : result.modes) modes.push_back(m.labels());
  json trace = json::array();
  if (include_trace) {
    for (const TraceEntry& t : result.trace) {
      trace.push_back(json{{"step", t.step},
                           {"move", std::string(to_string(t.move))},
                           {"accepted", t.accepted},
                           {"skipped", t.skipped},
                           {"total", t.total}});
    }
  }
  return dump(json{{"K", result.clustering.num_clusters()},
                   {"lambda", result.lambda},
                   {"weights", result.weights},
                   {"modes", std::move(modes)},
                   {"mode_indices", result.clustering.mode_index},
                   {"assignment", result.clustering.assignment},
                   {"objective", breakdown_json(result.breakdown)},
                   {"trace", std::move(trace)}});
}

StoredClustering parse_clustering_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object()) throw std::invalid_argument("clustering document must be a JSON object");
  StoredClustering out;
  out.clustering.assignment = field<std::vector<std::size_t>>(j, "assignment");
  out.clustering.mode_index = field<std::vector<std::size_t>>(j, "mode_indices");
  if (j.contains("lambda")) out.lambda = field<double>(j, "lambda");
  if (j.contains("objective") && j["objective"].contains("total")) {
    out.total = field<double>(j["objective"], "total");
  }
  if (j.contains("K") && field<std::size_t>(j, "K") != out.clustering.num_clusters()) {
    throw std::invalid_argument("K does not match the number of modes");
  }
  validate(out.clustering, out.clustering.assignment.size());
  return out;
}

PerturbationSpec parse_perturbation_spec(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object()) throw std::invalid_argument("perturbation spec must be a JSON object");
  PerturbationSpec spec;
  const json bases = field<json>(j, "bases");
  if (!bases.is_array()) throw std::invalid_argument("field 'bases' must be an array");
  for (const json& b : bases) {
    const auto labels = field<std::vector<std::int64_t>>(b, "labels");
    spec.bases.push_back({canonicalize(labels), field<double>(b, "weight")});
  }
  spec.node_flip_rate = field<double>(j, "node_flip_rate");
  spec.samples = field<std::size_t>(j, "S");
  if (j.contains("seed")) spec.seed = field<std::uint64_t>(j, "seed");
  if (j.contains("flip_units")) spec.flip_units = field<std::vector<std::vector<std::size_t>>>(j, "flip_units");
  spec.validate();
  return spec;
}

}  // namespace partmodes
