#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "firmcore/mlgraph.hpp"
#include "firmcore/top_lambda.hpp"

namespace firmcore {

struct FirmCoreOptions {
    TopLambdaUpdate update = TopLambdaUpdate::hybrid;
    /// c in the hybrid switch lambda >= c * |L| / log2 |L|.
    double hybrid_constant = 1.0;
    /// Re-evaluate a neighbor only when one of its layer degrees falls just
    /// below its current Top-lambda value. Disabling re-evaluates every
    /// touched neighbor; results are identical.
    bool neighbor_short_circuit = true;
};

/// core_lambda(v) for every (lambda, v): the largest k such that v belongs to
/// the (k, lambda)-FirmCore, i.e. the maximal node set in which every node
/// has induced degree >= k in at least lambda layers.
class CoreIndexTable {
public:
    CoreIndexTable() = default;
    CoreIndexTable(std::size_t num_nodes, std::size_t num_layers)
        : num_nodes_(num_nodes), num_layers_(num_layers), data_(num_nodes * num_layers, 0) {}

    std::size_t num_nodes() const noexcept { return num_nodes_; }
    std::size_t num_layers() const noexcept { return num_layers_; }

    /// lambda is 1-based.
    std::uint32_t core(std::size_t lambda, NodeId v) const noexcept {
        return data_[(lambda - 1) * num_nodes_ + v];
    }
    std::span<const std::uint32_t> row(std::size_t lambda) const noexcept {
        return {data_.data() + (lambda - 1) * num_nodes_, num_nodes_};
    }
    std::span<std::uint32_t> row(std::size_t lambda) noexcept {
        return {data_.data() + (lambda - 1) * num_nodes_, num_nodes_};
    }
    std::uint32_t max_core(std::size_t lambda) const noexcept;

    friend bool operator==(const CoreIndexTable&, const CoreIndexTable&) = default;

private:
    std::size_t num_nodes_ = 0;
    std::size_t num_layers_ = 0;
    std::vector<std::uint32_t> data_;  // row-major (lambda - 1, node)
};

/// FirmCore indices for one lambda by bucket peeling in increasing Top-lambda
/// degree. Throws std::invalid_argument unless 1 <= lambda <= num_layers.
std::vector<std::uint32_t> firmcore_indices(const MultilayerGraph& graph, std::size_t lambda,
                                            const FirmCoreOptions& options = {});

/// All lambdas. Degree vectors are sorted once and the lambda-th entry seeds
/// each run; runs for different lambdas execute on up to `threads` threads and
/// the result does not depend on the thread count.
CoreIndexTable firmcore_decomposition(const MultilayerGraph& graph, std::size_t threads = 1,
                                      const FirmCoreOptions& options = {});

/// The (k, lambda)-FirmCore: {v : core_lambda(v) >= k}.
NodeSet extract_firmcore(const CoreIndexTable& table, std::uint32_t k, std::size_t lambda);

/// Same, from a single row of indices.
NodeSet extract_firmcore(std::span<const std::uint32_t> indices, std::uint32_t k);

}  // namespace firmcore
