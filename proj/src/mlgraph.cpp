#include "firmcore/mlgraph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

namespace firmcore {
namespace {

std::vector<Label> identity_labels(std::size_t n) {
    std::vector<Label> labels(n);
    std::iota(labels.begin(), labels.end(), Label{0});
    return labels;
}

void check_labels(std::vector<Label>& labels, std::size_t n, const char* what) {
    if (labels.empty()) {
        labels = identity_labels(n);
    } else if (labels.size() != n) {
        throw std::invalid_argument(std::string(what) + " label count does not match");
    }
}

void check_edge(const Edge& e, std::size_t num_nodes, std::size_t num_layers) {
    if (e.src >= num_nodes || e.dst >= num_nodes) {
        throw std::invalid_argument("edge endpoint out of range");
    }
    if (e.layer >= num_layers) {
        throw std::invalid_argument("edge layer out of range");
    }
}

// Builds one CSR per layer from (layer, src, dst) triples that are already
// sorted and unique.
std::vector<detail::LayerAdjacency> build_csr(std::size_t num_nodes, std::size_t num_layers,
                                              const std::vector<Edge>& sorted) {
    std::vector<detail::LayerAdjacency> layers(num_layers);
    for (auto& layer : layers) layer.offsets.assign(num_nodes + 1, 0);
    for (const Edge& e : sorted) ++layers[e.layer].offsets[e.src + 1];
    for (auto& layer : layers) {
        std::partial_sum(layer.offsets.begin(), layer.offsets.end(), layer.offsets.begin());
        layer.targets.resize(layer.offsets.back());
    }
    std::vector<std::vector<std::size_t>> cursor(num_layers);
    for (std::size_t l = 0; l < num_layers; ++l) {
        cursor[l].assign(layers[l].offsets.begin(), layers[l].offsets.end() - 1);
    }
    for (const Edge& e : sorted) layers[e.layer].targets[cursor[e.layer][e.src]++] = e.dst;
    return layers;
}

bool edge_less(const Edge& a, const Edge& b) {
    return std::tie(a.layer, a.src, a.dst) < std::tie(b.layer, b.src, b.dst);
}
bool edge_equal(const Edge& a, const Edge& b) {
    return a.layer == b.layer && a.src == b.src && a.dst == b.dst;
}

// Drops loops, sorts, removes duplicates. Returns number of duplicates removed.
std::size_t normalize(std::vector<Edge>& edges, IngestStats& stats) {
    const auto loops = std::remove_if(edges.begin(), edges.end(), [](const Edge& e) { return e.src == e.dst; });
    stats.self_loops += static_cast<std::size_t>(edges.end() - loops);
    edges.erase(loops, edges.end());
    std::sort(edges.begin(), edges.end(), edge_less);
    const auto dup = std::unique(edges.begin(), edges.end(), edge_equal);
    const auto removed = static_cast<std::size_t>(edges.end() - dup);
    edges.erase(dup, edges.end());
    return removed;
}

}  // namespace

MultilayerGraph MultilayerGraph::from_edges(std::size_t num_nodes, std::size_t num_layers,
                                            std::span<const Edge> edges, std::vector<Label> node_labels,
                                            std::vector<Label> layer_labels, IngestStats* stats) {
    check_labels(node_labels, num_nodes, "node");
    check_labels(layer_labels, num_layers, "layer");

    IngestStats local;
    std::vector<Edge> canon;
    canon.reserve(edges.size());
    for (const Edge& e : edges) {
        check_edge(e, num_nodes, num_layers);
        canon.push_back({e.layer, std::min(e.src, e.dst), std::max(e.src, e.dst)});
    }
    local.duplicates = normalize(canon, local);

    std::vector<Edge> both;
    both.reserve(canon.size() * 2);
    for (const Edge& e : canon) {
        both.push_back(e);
        both.push_back({e.layer, e.dst, e.src});
    }
    std::sort(both.begin(), both.end(), edge_less);

    MultilayerGraph g;
    g.num_nodes_ = num_nodes;
    g.layers_ = build_csr(num_nodes, num_layers, both);
    g.node_labels_ = std::move(node_labels);
    g.layer_labels_ = std::move(layer_labels);
    if (stats) *stats = local;
    return g;
}

std::size_t MultilayerGraph::num_edges() const noexcept {
    std::size_t total = 0;
    for (const auto& layer : layers_) total += layer.targets.size() / 2;
    return total;
}

std::vector<Edge> MultilayerGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (LayerId l = 0; l < num_layers(); ++l) {
        for (NodeId u = 0; u < num_nodes_; ++u) {
            for (NodeId v : neighbors(l, u)) {
                if (u < v) out.push_back({l, u, v});
            }
        }
    }
    return out;
}

DirectedMultilayerGraph DirectedMultilayerGraph::from_edges(std::size_t num_nodes, std::size_t num_layers,
                                                            std::span<const Edge> edges,
                                                            std::vector<Label> node_labels,
                                                            std::vector<Label> layer_labels, IngestStats* stats) {
    check_labels(node_labels, num_nodes, "node");
    check_labels(layer_labels, num_layers, "layer");

    IngestStats local;
    std::vector<Edge> arcs(edges.begin(), edges.end());
    for (const Edge& e : arcs) check_edge(e, num_nodes, num_layers);
    local.duplicates = normalize(arcs, local);

    std::vector<Edge> reversed;
    reversed.reserve(arcs.size());
    for (const Edge& e : arcs) reversed.push_back({e.layer, e.dst, e.src});
    std::sort(reversed.begin(), reversed.end(), edge_less);

    DirectedMultilayerGraph g;
    g.num_nodes_ = num_nodes;
    g.out_ = build_csr(num_nodes, num_layers, arcs);
    g.in_ = build_csr(num_nodes, num_layers, reversed);
    g.node_labels_ = std::move(node_labels);
    g.layer_labels_ = std::move(layer_labels);
    if (stats) *stats = local;
    return g;
}

std::size_t DirectedMultilayerGraph::num_edges() const noexcept {
    std::size_t total = 0;
    for (const auto& layer : out_) total += layer.targets.size();
    return total;
}

std::vector<Edge> DirectedMultilayerGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (LayerId l = 0; l < num_layers(); ++l) {
        for (NodeId u = 0; u < num_nodes_; ++u) {
            for (NodeId v : out_neighbors(l, u)) out.push_back({l, u, v});
        }
    }
    return out;
}

std::uint64_t DegreeMatrix::layer_total(LayerId l) const noexcept {
    std::uint64_t total = 0;
    for (std::size_t v = 0; v < num_nodes(); ++v) total += data_[v * num_layers_ + l];
    return total;
}

DegreeMatrix degree_matrix(const MultilayerGraph& graph, const NodeSet& subset) {
    const auto mask = subset.to_mask(graph.num_nodes());
    DegreeMatrix deg(graph.num_nodes(), graph.num_layers());
    for (LayerId l = 0; l < graph.num_layers(); ++l) {
        for (NodeId v : subset) {
            std::uint32_t d = 0;
            for (NodeId u : graph.neighbors(l, v)) d += mask[u] ? 1 : 0;
            deg.at(v, l) = d;
        }
    }
    return deg;
}

DegreeMatrix out_degree_matrix(const DirectedMultilayerGraph& graph, const NodeSet& sources,
                               const NodeSet& targets) {
    sources.to_mask(graph.num_nodes());
    const auto in_t = targets.to_mask(graph.num_nodes());
    DegreeMatrix deg(graph.num_nodes(), graph.num_layers());
    for (LayerId l = 0; l < graph.num_layers(); ++l) {
        for (NodeId u : sources) {
            std::uint32_t d = 0;
            for (NodeId v : graph.out_neighbors(l, u)) d += in_t[v] ? 1 : 0;
            deg.at(u, l) = d;
        }
    }
    return deg;
}

DegreeMatrix in_degree_matrix(const DirectedMultilayerGraph& graph, const NodeSet& sources,
                              const NodeSet& targets) {
    targets.to_mask(graph.num_nodes());
    const auto in_s = sources.to_mask(graph.num_nodes());
    DegreeMatrix deg(graph.num_nodes(), graph.num_layers());
    for (LayerId l = 0; l < graph.num_layers(); ++l) {
        for (NodeId v : targets) {
            std::uint32_t d = 0;
            for (NodeId u : graph.in_neighbors(l, v)) d += in_s[u] ? 1 : 0;
            deg.at(v, l) = d;
        }
    }
    return deg;
}

MultilayerGraph select_layers(const MultilayerGraph& graph, std::span<const LayerId> layers) {
    std::vector<Edge> edges;
    std::vector<Label> labels;
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const LayerId src_layer = layers[i];
        if (src_layer >= graph.num_layers()) throw std::invalid_argument("layer out of range");
        labels.push_back(graph.layer_label(src_layer));
        for (NodeId u = 0; u < graph.num_nodes(); ++u) {
            for (NodeId v : graph.neighbors(src_layer, u)) {
                if (u < v) edges.push_back({static_cast<LayerId>(i), u, v});
            }
        }
    }
    std::vector<Label> node_labels(graph.node_labels().begin(), graph.node_labels().end());
    return MultilayerGraph::from_edges(graph.num_nodes(), layers.size(), edges, std::move(node_labels),
                                       std::move(labels));
}

}  // namespace firmcore
