#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "firmcore/node_set.hpp"

namespace firmcore {

/// One intra-layer edge over internal ids. Orientation matters only for
/// directed graphs.
struct Edge {
    LayerId layer;
    NodeId src;
    NodeId dst;
};

/// What graph construction discarded.
struct IngestStats {
    std::size_t self_loops = 0;
    std::size_t duplicates = 0;
};

namespace detail {

// Compressed adjacency of one layer.
struct LayerAdjacency {
    std::vector<std::size_t> offsets;  // num_nodes + 1 entries
    std::vector<NodeId> targets;       // sorted within each node's range

    std::span<const NodeId> row(NodeId v) const noexcept {
        return {targets.data() + offsets[v], targets.data() + offsets[v + 1]};
    }
};

}  // namespace detail

/// Immutable undirected multilayer graph. Nodes are shared across layers;
/// edges live inside a single layer. Adjacency is symmetric, loop-free and
/// free of duplicate (u, v, layer) triples.
class MultilayerGraph {
public:
    MultilayerGraph() = default;

    /// Builds a graph from raw edges. Self-loops and repeated pairs (in either
    /// orientation) are dropped and tallied in `stats` when provided.
    /// Empty label vectors default to the identity mapping.
    /// Throws std::invalid_argument on out-of-range ids or label size mismatch.
    static MultilayerGraph from_edges(std::size_t num_nodes, std::size_t num_layers,
                                      std::span<const Edge> edges,
                                      std::vector<Label> node_labels = {},
                                      std::vector<Label> layer_labels = {},
                                      IngestStats* stats = nullptr);

    std::size_t num_nodes() const noexcept { return num_nodes_; }
    std::size_t num_layers() const noexcept { return layers_.size(); }
    /// Undirected edges summed over layers.
    std::size_t num_edges() const noexcept;
    std::size_t num_edges(LayerId layer) const noexcept { return layers_[layer].targets.size() / 2; }

    std::span<const NodeId> neighbors(LayerId layer, NodeId v) const noexcept {
        return layers_[layer].row(v);
    }
    std::uint32_t degree(LayerId layer, NodeId v) const noexcept {
        return static_cast<std::uint32_t>(layers_[layer].offsets[v + 1] - layers_[layer].offsets[v]);
    }

    Label node_label(NodeId v) const noexcept { return node_labels_[v]; }
    Label layer_label(LayerId l) const noexcept { return layer_labels_[l]; }
    std::span<const Label> node_labels() const noexcept { return node_labels_; }
    std::span<const Label> layer_labels() const noexcept { return layer_labels_; }

    /// Every edge once, with src < dst, ordered by (layer, src, dst).
    std::vector<Edge> edges() const;

private:
    std::size_t num_nodes_ = 0;
    std::vector<detail::LayerAdjacency> layers_;
    std::vector<Label> node_labels_;
    std::vector<Label> layer_labels_;
};

/// Immutable directed multilayer graph with out- and in-adjacency per layer.
/// The in-adjacency is the exact transpose of the out-adjacency.
class DirectedMultilayerGraph {
public:
    DirectedMultilayerGraph() = default;

    static DirectedMultilayerGraph from_edges(std::size_t num_nodes, std::size_t num_layers,
                                              std::span<const Edge> edges,
                                              std::vector<Label> node_labels = {},
                                              std::vector<Label> layer_labels = {},
                                              IngestStats* stats = nullptr);

    std::size_t num_nodes() const noexcept { return num_nodes_; }
    std::size_t num_layers() const noexcept { return out_.size(); }
    std::size_t num_edges() const noexcept;
    std::size_t num_edges(LayerId layer) const noexcept { return out_[layer].targets.size(); }

    std::span<const NodeId> out_neighbors(LayerId layer, NodeId v) const noexcept {
        return out_[layer].row(v);
    }
    std::span<const NodeId> in_neighbors(LayerId layer, NodeId v) const noexcept {
        return in_[layer].row(v);
    }
    std::uint32_t out_degree(LayerId layer, NodeId v) const noexcept {
        return static_cast<std::uint32_t>(out_[layer].offsets[v + 1] - out_[layer].offsets[v]);
    }
    std::uint32_t in_degree(LayerId layer, NodeId v) const noexcept {
        return static_cast<std::uint32_t>(in_[layer].offsets[v + 1] - in_[layer].offsets[v]);
    }

    Label node_label(NodeId v) const noexcept { return node_labels_[v]; }
    Label layer_label(LayerId l) const noexcept { return layer_labels_[l]; }
    std::span<const Label> node_labels() const noexcept { return node_labels_; }
    std::span<const Label> layer_labels() const noexcept { return layer_labels_; }

    /// Every arc once, ordered by (layer, src, dst).
    std::vector<Edge> edges() const;

private:
    std::size_t num_nodes_ = 0;
    std::vector<detail::LayerAdjacency> out_;
    std::vector<detail::LayerAdjacency> in_;
    std::vector<Label> node_labels_;
    std::vector<Label> layer_labels_;
};

/// Per-node vector of per-layer degrees, stored row-major (node, layer).
/// Rows of nodes outside the set it was computed for are zero.
class DegreeMatrix {
public:
    DegreeMatrix(std::size_t num_nodes, std::size_t num_layers)
        : num_layers_(num_layers), data_(num_nodes * num_layers, 0) {}

    std::size_t num_nodes() const noexcept { return num_layers_ ? data_.size() / num_layers_ : 0; }
    std::size_t num_layers() const noexcept { return num_layers_; }

    std::uint32_t at(NodeId v, LayerId l) const noexcept { return data_[std::size_t{v} * num_layers_ + l]; }
    std::uint32_t& at(NodeId v, LayerId l) noexcept { return data_[std::size_t{v} * num_layers_ + l]; }
    std::span<const std::uint32_t> row(NodeId v) const noexcept {
        return {data_.data() + std::size_t{v} * num_layers_, num_layers_};
    }

    /// Column sum for one layer.
    std::uint64_t layer_total(LayerId l) const noexcept;

private:
    std::size_t num_layers_;
    std::vector<std::uint32_t> data_;
};

/// Degrees in the subgraph induced by `subset`: entry (v, l) counts the
/// neighbors of v inside `subset` in layer l, for v in `subset`.
/// Throws std::out_of_range if an id is not a node of `graph`.
DegreeMatrix degree_matrix(const MultilayerGraph& graph, const NodeSet& subset);

/// Out-degrees of S-nodes into T, per layer (the S side of G[S, T]).
DegreeMatrix out_degree_matrix(const DirectedMultilayerGraph& graph, const NodeSet& sources,
                               const NodeSet& targets);

/// In-degrees of T-nodes from S, per layer.
DegreeMatrix in_degree_matrix(const DirectedMultilayerGraph& graph, const NodeSet& sources,
                              const NodeSet& targets);

/// Keeps only the given layers (in the given order); node set unchanged.
MultilayerGraph select_layers(const MultilayerGraph& graph, std::span<const LayerId> layers);

}  // namespace firmcore
