#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "firmcore/firmcore.hpp"
#include "firmcore/mlgraph.hpp"

namespace firmcore {

/// An (S, T)-induced subgraph given by its two (possibly overlapping) sides.
struct DirectedCore {
    NodeSet s;
    NodeSet t;

    bool empty() const noexcept { return s.empty() && t.empty(); }
    friend bool operator==(const DirectedCore&, const DirectedCore&) = default;
};

/// Indices of one node at fixed (lambda, k). For r >= 1 the (k, r, lambda)
/// FirmD-Core is S = {u : s_index(u) >= r}, T = {v : t_index(v) >= r}.
struct DCoreEntry {
    NodeId node;
    std::uint32_t t_index;
    std::uint32_t s_index;

    friend bool operator==(const DCoreEntry&, const DCoreEntry&) = default;
};

/// Everything computed for one lambda.
struct DCoreLambdaRow {
    std::size_t lambda = 0;
    /// Largest Top-lambda out-degree; slices exist for k in [1, k_max].
    std::uint32_t k_max = 0;
    /// Top-lambda out- and in-degree of every node in the whole graph; these
    /// describe the k = 0 and r = 0 cores.
    std::vector<std::uint32_t> top_out;
    std::vector<std::uint32_t> top_in;
    /// slices[k - 1]: entries with a non-zero index, sorted by node.
    std::vector<std::vector<DCoreEntry>> slices;

    friend bool operator==(const DCoreLambdaRow&, const DCoreLambdaRow&) = default;
};

class DCoreIndexTable {
public:
    DCoreIndexTable() = default;
    DCoreIndexTable(std::size_t num_nodes, std::vector<DCoreLambdaRow> rows)
        : num_nodes_(num_nodes), rows_(std::move(rows)) {}

    std::size_t num_nodes() const noexcept { return num_nodes_; }
    std::size_t num_layers() const noexcept { return rows_.size(); }

    const DCoreLambdaRow& row(std::size_t lambda) const { return rows_.at(lambda - 1); }
    std::uint32_t k_max(std::size_t lambda) const { return row(lambda).k_max; }

    /// Sparse slice for (lambda, k); empty when k is 0 or above k_max.
    std::span<const DCoreEntry> slice(std::size_t lambda, std::uint32_t k) const;

    /// 0 for absent entries.
    std::uint32_t t_index(std::size_t lambda, std::uint32_t k, NodeId v) const;
    std::uint32_t s_index(std::size_t lambda, std::uint32_t k, NodeId v) const;

    friend bool operator==(const DCoreIndexTable&, const DCoreIndexTable&) = default;

private:
    std::size_t num_nodes_ = 0;
    std::vector<DCoreLambdaRow> rows_;
};

/// The maximal (k, r, lambda)-FirmD-Core computed directly: every u in S has
/// out-degree >= k into T in at least lambda layers and every v in T has
/// in-degree >= r from S in at least lambda layers.
/// Throws std::invalid_argument unless 1 <= lambda <= num_layers.
DirectedCore firmdcore_fixed(const DirectedMultilayerGraph& graph, std::uint32_t k, std::uint32_t r,
                             std::size_t lambda);

/// Decomposition for one lambda: for every k in [1, k_max] a bucket peel by
/// Top-lambda in-degree records at which level each node leaves T and S.
DCoreLambdaRow firmdcore_decomposition(const DirectedMultilayerGraph& graph, std::size_t lambda,
                                       const FirmCoreOptions& options = {});

/// All lambdas, computed concurrently on up to `threads` threads.
DCoreIndexTable full_firmdcore(const DirectedMultilayerGraph& graph, std::size_t threads = 1,
                               const FirmCoreOptions& options = {});

/// Rebuilds the (k, r, lambda)-FirmD-Core from the table, for any k, r >= 0.
DirectedCore extract_firmdcore(const DCoreIndexTable& table, std::uint32_t k, std::uint32_t r,
                               std::size_t lambda);

}  // namespace firmcore
