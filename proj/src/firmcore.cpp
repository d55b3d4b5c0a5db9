#include "firmcore/firmcore.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "firmcore/bucket_queue.hpp"
#include "firmcore/parallel.hpp"

namespace firmcore {
namespace {

void check_lambda(std::size_t lambda, std::size_t num_layers) {
    if (lambda < 1 || lambda > num_layers) {
        throw std::invalid_argument("lambda must lie in [1, number of layers]");
    }
}

std::vector<std::uint32_t> layer_degrees(const MultilayerGraph& graph) {
    const std::size_t layers = graph.num_layers();
    std::vector<std::uint32_t> deg(graph.num_nodes() * layers);
    for (NodeId v = 0; v < graph.num_nodes(); ++v) {
        for (LayerId l = 0; l < layers; ++l) deg[std::size_t{v} * layers + l] = graph.degree(l, v);
    }
    return deg;
}

// Peels nodes in increasing order of their Top-lambda bound. `bound` holds the
// initial Top-lambda degree of every node.
std::vector<std::uint32_t> peel(const MultilayerGraph& graph, std::size_t lambda, std::vector<std::uint32_t> bound,
                                const FirmCoreOptions& options) {
    const std::size_t n = graph.num_nodes();
    const std::size_t layers = graph.num_layers();
    std::vector<std::uint32_t> deg = layer_degrees(graph);
    std::vector<std::uint32_t> core(n, 0);

    const std::uint32_t max_bound = n ? *std::max_element(bound.begin(), bound.end()) : 0;
    BucketQueue buckets(n, std::size_t{max_bound} + 1);
    for (NodeId v = 0; v < n; ++v) {
        const auto row = std::span<const std::uint32_t>(deg).subspan(std::size_t{v} * layers, layers);
        // Isolated nodes keep index 0 and never touch a neighbor.
        if (std::any_of(row.begin(), row.end(), [](std::uint32_t d) { return d > 0; })) buckets.push(v, bound[v]);
    }

    TopLambdaUpdater update(layers, lambda, options.update, options.hybrid_constant);
    std::vector<NodeId> touched;
    std::vector<char> marked(n, 0);

    for (std::uint32_t k = 0; k <= max_bound; ++k) {
        while (const auto picked = buckets.pop(k)) {
            const NodeId v = *picked;
            core[v] = k;
            touched.clear();
            for (LayerId l = 0; l < layers; ++l) {
                for (NodeId u : graph.neighbors(l, v)) {
                    // Removed nodes and nodes already settled at level k have bound <= k.
                    if (bound[u] <= k) continue;
                    const std::uint32_t d = --deg[std::size_t{u} * layers + l];
                    if ((!options.neighbor_short_circuit || d + 1 == bound[u]) && !marked[u]) {
                        marked[u] = 1;
                        touched.push_back(u);
                    }
                }
            }
            for (NodeId u : touched) {
                marked[u] = 0;
                const auto row = std::span<const std::uint32_t>(deg).subspan(std::size_t{u} * layers, layers);
                const std::uint32_t refreshed = std::max(update(row, bound[u]), k);
                if (refreshed != bound[u]) {
                    bound[u] = refreshed;
                    buckets.move(u, refreshed);
                }
            }
        }
    }
    return core;
}

}  // namespace

std::uint32_t CoreIndexTable::max_core(std::size_t lambda) const noexcept {
    const auto r = row(lambda);
    return r.empty() ? 0 : *std::max_element(r.begin(), r.end());
}

std::vector<std::uint32_t> firmcore_indices(const MultilayerGraph& graph, std::size_t lambda,
                                            const FirmCoreOptions& options) {
    check_lambda(lambda, graph.num_layers());
    const std::size_t layers = graph.num_layers();
    const std::vector<std::uint32_t> deg = layer_degrees(graph);
    std::vector<std::uint32_t> bound(graph.num_nodes());
    for (NodeId v = 0; v < graph.num_nodes(); ++v) {
        bound[v] = top_lambda(std::span<const std::uint32_t>(deg).subspan(std::size_t{v} * layers, layers), lambda);
    }
    return peel(graph, lambda, std::move(bound), options);
}

CoreIndexTable firmcore_decomposition(const MultilayerGraph& graph, std::size_t threads,
                                      const FirmCoreOptions& options) {
    const std::size_t n = graph.num_nodes();
    const std::size_t layers = graph.num_layers();
    CoreIndexTable table(n, layers);

    // Each node's degree vector sorted once, descending; entry lambda-1 is its
    // Top-lambda degree.
    std::vector<std::uint32_t> sorted = layer_degrees(graph);
    for (std::size_t v = 0; v < n; ++v) {
        auto first = sorted.begin() + static_cast<std::ptrdiff_t>(v * layers);
        std::sort(first, first + static_cast<std::ptrdiff_t>(layers), std::greater<>());
    }

    parallel_for(layers, threads, [&](std::size_t i) {
        const std::size_t lambda = i + 1;
        std::vector<std::uint32_t> bound(n);
        for (std::size_t v = 0; v < n; ++v) bound[v] = sorted[v * layers + i];
        const auto core = peel(graph, lambda, std::move(bound), options);
        std::copy(core.begin(), core.end(), table.row(lambda).begin());
    });
    return table;
}

NodeSet extract_firmcore(std::span<const std::uint32_t> indices, std::uint32_t k) {
    std::vector<NodeId> ids;
    for (std::size_t v = 0; v < indices.size(); ++v) {
        if (indices[v] >= k) ids.push_back(static_cast<NodeId>(v));
    }
    return NodeSet(std::move(ids));
}

NodeSet extract_firmcore(const CoreIndexTable& table, std::uint32_t k, std::size_t lambda) {
    check_lambda(lambda, table.num_layers());
    return extract_firmcore(table.row(lambda), k);
}

}  // namespace firmcore
