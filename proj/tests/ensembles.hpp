#pragma once

// Ground-truth ensembles shared by the engine tests and the acceptance suite.

#include <cstdint>
#include <ostream>
#include <vector>

#include "partmodes/sampler.hpp"

namespace partmodes {

inline void PrintTo(const Partition& p, std::ostream* os) {
  *os << "[";
  for (std::size_t i = 0; i < p.num_nodes(); ++i) *os << (i ? " " : "") << p[i];
  *os << "]";
}

}  // namespace partmodes

namespace fixtures {

// q contiguous groups of n / q nodes.
inline partmodes::Partition contiguous(std::size_t n, std::size_t q) {
  std::vector<std::int64_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<std::int64_t>(i * q / n);
  return partmodes::canonicalize(labels);
}

// Node i in group i mod q.
inline partmodes::Partition interleaved(std::size_t n, std::size_t q) {
  std::vector<std::int64_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<std::int64_t>(i % q);
  return partmodes::canonicalize(labels);
}

inline partmodes::PerturbationSpec unimodal(std::size_t samples, double flip, std::uint64_t seed) {
  partmodes::PerturbationSpec spec;
  spec.bases = {{contiguous(100, 4), 1.0}};
  spec.node_flip_rate = flip;
  spec.samples = samples;
  spec.seed = seed;
  return spec;
}

// Two unrelated 4-group bases on 100 nodes.
inline partmodes::PerturbationSpec two_families(std::size_t samples, double flip, std::uint64_t seed,
                                                double weight_a = 0.5) {
  partmodes::PerturbationSpec spec;
  spec.bases = {{contiguous(100, 4), weight_a}, {interleaved(100, 4), 1.0 - weight_a}};
  spec.node_flip_rate = flip;
  spec.samples = samples;
  spec.seed = seed;
  return spec;
}

// The two ways of pairing adjacent cliques of an 8 x 6 ring of cliques.
inline std::vector<partmodes::Partition> clique_pairings() {
  std::vector<std::int64_t> a(48), b(48);
  for (std::size_t i = 0; i < 48; ++i) {
    const std::size_t clique = i / 6;
    a[i] = static_cast<std::int64_t>(clique / 2);
    b[i] = static_cast<std::int64_t>(((clique + 7) % 8) / 2);
  }
  return {partmodes::canonicalize(a), partmodes::canonicalize(b)};
}

// Clique-pairing ensemble whose noise moves whole cliques.
inline partmodes::PerturbationSpec ring_bimodal(std::size_t samples, double flip, std::uint64_t seed) {
  const auto bases = clique_pairings();
  partmodes::PerturbationSpec spec;
  spec.bases = {{bases[0], 0.5}, {bases[1], 0.5}};
  spec.node_flip_rate = flip;
  spec.samples = samples;
  spec.seed = seed;
  for (std::size_t c = 0; c < 8; ++c) {
    std::vector<std::size_t> unit;
    for (std::size_t i = 0; i < 6; ++i) unit.push_back(6 * c + i);
    spec.flip_units.push_back(unit);
  }
  return spec;
}

}  // namespace fixtures
