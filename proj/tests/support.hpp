#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "firmcore/mlgraph.hpp"

namespace firmcore::testing {

inline MultilayerGraph make_graph(std::size_t n, std::size_t layers, std::initializer_list<Edge> edges) {
    std::vector<Edge> list(edges);
    return MultilayerGraph::from_edges(n, layers, list);
}

inline DirectedMultilayerGraph make_digraph(std::size_t n, std::size_t layers, std::initializer_list<Edge> edges) {
    std::vector<Edge> list(edges);
    return DirectedMultilayerGraph::from_edges(n, layers, list);
}

// Independent G(n, p) layers with a per-layer probability, drawn directly so
// tests do not depend on the synthetic generator.
inline MultilayerGraph random_graph(std::mt19937_64& rng, std::size_t n, std::size_t layers, double p) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (LayerId l = 0; l < layers; ++l) {
        for (NodeId u = 0; u < n; ++u) {
            for (NodeId v = u + 1; v < n; ++v) {
                if (coin(rng)) edges.push_back({l, u, v});
            }
        }
    }
    return MultilayerGraph::from_edges(n, layers, edges);
}

inline DirectedMultilayerGraph random_digraph(std::mt19937_64& rng, std::size_t n, std::size_t layers, double p) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (LayerId l = 0; l < layers; ++l) {
        for (NodeId u = 0; u < n; ++u) {
            for (NodeId v = 0; v < n; ++v) {
                if (u != v && coin(rng)) edges.push_back({l, u, v});
            }
        }
    }
    return DirectedMultilayerGraph::from_edges(n, layers, edges);
}

// Random small graph with size, layer count and density drawn per instance.
inline MultilayerGraph random_small_graph(std::mt19937_64& rng, std::size_t max_nodes, std::size_t max_layers) {
    static constexpr double probs[] = {0.2, 0.5, 0.8};
    std::uniform_int_distribution<std::size_t> nodes(1, max_nodes);
    std::uniform_int_distribution<std::size_t> layers(1, max_layers);
    std::uniform_int_distribution<int> pick(0, 2);
    const std::size_t n = nodes(rng);
    const std::size_t l = layers(rng);
    return random_graph(rng, n, l, probs[pick(rng)]);
}

inline DirectedMultilayerGraph random_small_digraph(std::mt19937_64& rng, std::size_t max_nodes,
                                                    std::size_t max_layers) {
    static constexpr double probs[] = {0.2, 0.4, 0.6};
    std::uniform_int_distribution<std::size_t> nodes(1, max_nodes);
    std::uniform_int_distribution<std::size_t> layers(1, max_layers);
    std::uniform_int_distribution<int> pick(0, 2);
    const std::size_t n = nodes(rng);
    const std::size_t l = layers(rng);
    return random_digraph(rng, n, l, probs[pick(rng)]);
}

// a >= b up to a relative tolerance.
inline bool at_least(double a, double b, double rel = 1e-12) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return a >= b - rel * scale;
}

}  // namespace firmcore::testing
