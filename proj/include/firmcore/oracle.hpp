#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "firmcore/mlgraph.hpp"

// Brute-force references for tests. Every routine here is written from the
// definitions alone and is intentionally slow.
namespace firmcore::oracle {

/// Input size limits for the exhaustive routines.
struct OracleBudget {
    std::size_t max_nodes = 12;
    std::size_t max_layers = 5;
    std::chrono::duration<double> time_cap = std::chrono::seconds(60);
    /// Skip every size check. The time cap still applies.
    bool override_limits = false;

    static OracleBudget unlimited() {
        OracleBudget b;
        b.override_limits = true;
        b.time_cap = std::chrono::hours(24);
        return b;
    }
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Maximal node set in which every node has >= k neighbors (inside the set)
/// in >= lambda layers. Removes one violating node at a time until none is
/// left; with `shuffle_seed` the scan order is randomized.
NodeSet naive_firmcore(const MultilayerGraph& graph, std::uint32_t k, std::size_t lambda,
                       const OracleBudget& budget = {}, std::optional<std::uint64_t> shuffle_seed = std::nullopt);

struct SidePair {
    NodeSet s;
    NodeSet t;
    friend bool operator==(const SidePair&, const SidePair&) = default;
};

/// Maximal (S, T) with S-nodes having >= k out-neighbors in T in >= lambda
/// layers and T-nodes >= r in-neighbors in S in >= lambda layers.
SidePair naive_firmdcore(const DirectedMultilayerGraph& graph, std::uint32_t k, std::uint32_t r,
                         std::size_t lambda, const OracleBudget& budget = {},
                         std::optional<std::uint64_t> shuffle_seed = std::nullopt);

/// Classic single-layer core numbers of one layer (Batagelj–Zaversnik).
/// Not budgeted; linear time.
std::vector<std::uint32_t> classic_core_numbers(const MultilayerGraph& graph, LayerId layer);

/// Single-layer [x, y]-core of one layer: S-nodes need out-degree >= x into T,
/// T-nodes in-degree >= y from S.
SidePair xy_core(const DirectedMultilayerGraph& graph, LayerId layer, std::uint32_t x, std::uint32_t y);

/// rho computed by enumerating every non-empty layer subset.
double rho_by_enumeration(std::span<const std::uint64_t> edges_per_layer, double normalizer, double beta);

struct DensestUndirected {
    double rho = 0.0;
    NodeSet nodes;
};
struct DensestDirected {
    double rho = 0.0;
    NodeSet s;
    NodeSet t;
};

/// Optimum of the multilayer densest-subgraph objective over all non-empty
/// node sets (|V| <= 12).
DensestUndirected exhaustive_densest(const MultilayerGraph& graph, double beta, const OracleBudget& budget = {});

/// Same over all pairs of non-empty (S, T) (|V| <= 8).
DensestDirected exhaustive_densest(const DirectedMultilayerGraph& graph, double beta,
                                   const OracleBudget& budget = {});

/// All maximal node sets H with |H| >= min_size that are Gamma(l)-quasi-cliques
/// (every node has degree >= ceil(Gamma(l) (|H| - 1)) in layer l) in at least
/// ceil(min_sup |L|) layers (|V| <= 10).
std::vector<NodeSet> exhaustive_quasicliques(const MultilayerGraph& graph, std::span<const double> gamma,
                                             double min_sup, std::size_t min_size,
                                             const OracleBudget& budget = {});

/// max over non-empty S of min over layers of the minimum induced degree.
std::uint32_t exhaustive_bff(const MultilayerGraph& graph, const OracleBudget& budget = {});

/// The largest lambda for which the (mu, lambda)-FirmCore is non-empty, where
/// mu is the minimum degree of a densest single-layer subgraph in its layer.
/// Maximized over all densest single-layer subgraphs. Returns 0 on a graph
/// without edges.
std::size_t exact_lambda_plus(const MultilayerGraph& graph, const OracleBudget& budget = {});

/// Directed analogue: the largest lambda for which some (k, r, lambda)
/// FirmD-Core with k r >= x* y* is non-empty, [x*, y*] being the maximum
/// cn-pair in the layer of a densest single-layer (S, T) pair. Returns 0 on a
/// graph without edges.
std::size_t exact_lambda_hat(const DirectedMultilayerGraph& graph, const OracleBudget& budget = {});

}  // namespace firmcore::oracle
