#include "firmcore/synthetic.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace firmcore {
namespace {

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability must lie in [0, 1]");
}

// Visits the chosen indices of a Bernoulli(p) sequence of length `count`
// using geometric skips, so sparse graphs cost O(edges) rather than O(pairs).
template <typename Visit>
void sample_indices(std::uint64_t count, double p, std::mt19937_64& rng, Visit&& visit) {
    if (p <= 0.0 || count == 0) return;
    if (p >= 1.0) {
        for (std::uint64_t i = 0; i < count; ++i) visit(i);
        return;
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double log_q = std::log1p(-p);
    std::uint64_t i = 0;
    while (true) {
        const double r = unit(rng);
        const double skip = std::floor(std::log1p(-r) / log_q);
        if (skip >= static_cast<double>(count - i)) return;
        i += static_cast<std::uint64_t>(skip);
        visit(i);
        if (++i >= count) return;
    }
}

// Pair index -> (u, v) with u < v over the first `n` nodes, row-major over
// the strict lower triangle: index = v*(v-1)/2 + u.
std::pair<NodeId, NodeId> unrank_pair(std::uint64_t index) {
    auto v = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(index))) / 2.0);
    while (v * (v - 1) / 2 > index) --v;
    while ((v + 1) * v / 2 <= index) ++v;
    const std::uint64_t u = index - v * (v - 1) / 2;
    return {static_cast<NodeId>(u), static_cast<NodeId>(v)};
}

void add_random_pairs(std::vector<Edge>& edges, LayerId layer, std::size_t n, double p, std::mt19937_64& rng) {
    const std::uint64_t pairs = std::uint64_t{n} * (n > 0 ? n - 1 : 0) / 2;
    sample_indices(pairs, p, rng, [&](std::uint64_t idx) {
        const auto [u, v] = unrank_pair(idx);
        edges.push_back({layer, u, v});
    });
}

}  // namespace

MultilayerGraph generate_synthetic(std::size_t num_nodes, std::size_t num_layers, const SyntheticModel& model,
                                   std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Edge> edges;
    if (const auto* uniform = std::get_if<UniformRandom>(&model)) {
        check_probability(uniform->p);
        for (LayerId l = 0; l < num_layers; ++l) add_random_pairs(edges, l, num_nodes, uniform->p, rng);
    } else {
        const auto& planted = std::get<PlantedDense>(model);
        check_probability(planted.p_in);
        check_probability(planted.p_out);
        if (planted.core_size > num_nodes) throw std::invalid_argument("core_size exceeds num_nodes");
        for (LayerId l = 0; l < num_layers; ++l) {
            add_random_pairs(edges, l, num_nodes, planted.p_out, rng);
            add_random_pairs(edges, l, planted.core_size, planted.p_in, rng);
        }
    }
    return MultilayerGraph::from_edges(num_nodes, num_layers, edges);
}

DirectedMultilayerGraph generate_synthetic_directed(std::size_t num_nodes, std::size_t num_layers, double p,
                                                    std::uint64_t seed) {
    check_probability(p);
    std::mt19937_64 rng(seed);
    std::vector<Edge> edges;
    const std::uint64_t n = num_nodes;
    const std::uint64_t ordered = n > 0 ? n * (n - 1) : 0;
    for (LayerId l = 0; l < num_layers; ++l) {
        sample_indices(ordered, p, rng, [&](std::uint64_t idx) {
            const std::uint64_t u = idx / (n - 1);
            const std::uint64_t j = idx % (n - 1);
            const std::uint64_t v = j < u ? j : j + 1;
            edges.push_back({l, static_cast<NodeId>(u), static_cast<NodeId>(v)});
        });
    }
    return DirectedMultilayerGraph::from_edges(num_nodes, num_layers, edges);
}

}  // namespace firmcore
