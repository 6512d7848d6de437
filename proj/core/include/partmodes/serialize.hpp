#pragma once

#include <optional>
#include <string>

#include "partmodes/engine.hpp"
#include "partmodes/graph.hpp"
#include "partmodes/objective.hpp"
#include "partmodes/sampler.hpp"

namespace partmodes {

/// JSON documents. Writers emit pretty-printed text with a trailing newline;
/// readers throw std::invalid_argument on malformed or inconsistent input.
std::string to_json(const ObjectiveBreakdown& breakdown);
std::string to_json(const EncodingLength& length);
std::string to_json(const Graph& graph);
std::string to_json(const ClusteringResult& result, bool include_trace = true);

struct StoredClustering {
  Clustering clustering;
  double lambda = 1.0;
  std::optional<double> total;  // objective total recorded at write time
};

/// Reads the clustering back from a result document ("assignment",
/// "mode_indices", "lambda").
StoredClustering parse_clustering_json(const std::string& text);

/// {"bases": [{"labels": [...], "weight": w}, ...], "node_flip_rate": r,
///  "S": n, "seed": s, "flip_units": [[...], ...]}; seed and flip_units optional.
PerturbationSpec parse_perturbation_spec(const std::string& text);

}  // namespace partmodes
