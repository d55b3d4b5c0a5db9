#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>

#include "firmcore/mlgraph.hpp"

namespace firmcore {

/// Erdős–Rényi G(n, p) independently in every layer.
struct UniformRandom {
    double p = 0.0;
};

/// Background G(n, p_out) in every layer plus G(core_size, p_in) on nodes
/// [0, core_size) in every layer.
struct PlantedDense {
    std::size_t core_size = 0;
    double p_in = 0.0;
    double p_out = 0.0;
};

using SyntheticModel = std::variant<UniformRandom, PlantedDense>;

/// Deterministic for a fixed seed. Throws std::invalid_argument for a
/// probability outside [0, 1] or core_size > num_nodes.
MultilayerGraph generate_synthetic(std::size_t num_nodes, std::size_t num_layers, const SyntheticModel& model,
                                   std::uint64_t seed);

/// G(n, p) over ordered pairs, independently per layer.
DirectedMultilayerGraph generate_synthetic_directed(std::size_t num_nodes, std::size_t num_layers, double p,
                                                    std::uint64_t seed);

}  // namespace firmcore
