#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "firmcore/firmcore.hpp"
#include "firmcore/firmdcore.hpp"
#include "firmcore/mlgraph.hpp"

namespace firmcore {

/// The core a density report was taken from. `r` is set for directed cores.
struct SourceCore {
    std::uint32_t k = 0;
    std::optional<std::uint32_t> r;
    std::size_t lambda = 0;

    friend bool operator==(const SourceCore&, const SourceCore&) = default;
};

/// Multilayer density of a node set (undirected) or of an (S, T) pair.
///
/// rho = max over non-empty layer subsets L' of min_{l in L'} d_l * |L'|^beta
/// where d_l is |E_l[S]| / |S|, or |E_l(S, T)| / sqrt(|S| |T|) when directed.
struct DensityReport {
    bool directed = false;
    NodeSet nodes;  // undirected
    NodeSet s;      // directed
    NodeSet t;      // directed
    double beta = 1.0;
    double rho = 0.0;
    /// The densest |L'| layers, densest first (ties by layer id).
    std::vector<LayerId> chosen_layers;
    /// Indexed by internal layer id.
    std::vector<double> per_layer_density;
    std::optional<SourceCore> source_core;
};

/// Value of the best top-j prefix of the per-layer densities.
struct LayerSelection {
    double rho = 0.0;
    std::vector<LayerId> layers;
};

/// Sorts densities in decreasing order and maximizes d_(j) * j^beta. The
/// inner minimum over any j layers is largest for the j densest ones, so this
/// equals the maximum over all layer subsets.
LayerSelection best_layer_subset(std::span<const double> per_layer_density, double beta);

/// Throws std::invalid_argument for an empty set or beta <= 0.
DensityReport rho_undirected(const MultilayerGraph& graph, const NodeSet& nodes, double beta);
DensityReport rho_directed(const DirectedMultilayerGraph& graph, const NodeSet& s, const NodeSet& t, double beta);

/// Evaluates rho on every distinct non-empty (k, lambda)-FirmCore with k >= 1
/// and returns the best. Ties prefer smaller lambda, then larger k, then fewer
/// nodes. A graph without edges yields rho = 0 over all nodes.
DensityReport fc_approx(const MultilayerGraph& graph, double beta, std::size_t threads = 1);
DensityReport fc_approx(const MultilayerGraph& graph, const CoreIndexTable& table, double beta,
                        std::size_t threads = 1);

/// Same over every non-empty (k, r, lambda)-FirmD-Core with k, r >= 1. Ties
/// prefer smaller lambda, larger k, larger r, then fewer nodes in S and T.
DensityReport fdc_approx(const DirectedMultilayerGraph& graph, double beta, std::size_t threads = 1);
DensityReport fdc_approx(const DirectedMultilayerGraph& graph, const DCoreIndexTable& table, double beta,
                         std::size_t threads = 1);

/// max over integer xi in [0, lambda_plus) of (lambda_plus - xi) (xi + 1)^beta.
/// Throws std::invalid_argument if lambda_plus < 1 or beta <= 0.
double psi_beta(std::size_t lambda_plus, double beta);

/// psi_beta / (2 |L|^(beta + 1)).
double approx_factor(std::size_t num_layers, std::size_t lambda_plus, double beta);

struct ApproxDiagnostics {
    std::size_t lambda_plus = 0;
    double psi_beta = 0.0;
    double guaranteed_factor = 0.0;
};

ApproxDiagnostics approx_diagnostics(std::size_t num_layers, std::size_t lambda_plus, double beta);

/// Lower bound k / (2|L|) * psi_beta(lambda) on rho of any non-empty
/// (k, lambda)-FirmCore.
double lemma1_bound(std::uint32_t k, std::size_t lambda, std::size_t num_layers, double beta);

/// Lower bound psi_beta(lambda) / |L| * max(k sqrt(a), r / sqrt(a)),
/// a = |S| / |T|, on rho of any non-empty (k, r, lambda)-FirmD-Core.
double lemma4_bound(std::uint32_t k, std::uint32_t r, std::size_t lambda, std::size_t num_layers, double beta,
                    std::size_t s_size, std::size_t t_size);

/// Maximizer of min over layers of the minimum induced degree.
struct BffResult {
    NodeSet nodes;
    std::uint32_t k_max = 0;
};

/// The (k_max, |L|)-FirmCore with the largest k for which it is non-empty.
/// Throws std::invalid_argument on a graph without nodes or layers.
BffResult bff_mm(const MultilayerGraph& graph);

/// Minimum over layers of the minimum induced degree of `nodes`.
std::uint32_t bff_objective(const MultilayerGraph& graph, const NodeSet& nodes);

/// Superset of every frequent cross-graph quasi-clique with at least
/// `min_size` nodes: the (ceil(gamma (min_size - 1)), ceil(min_sup |L|))
/// FirmCore, gamma = min over layers of `gamma_per_layer`.
/// Throws std::invalid_argument unless every gamma and min_sup lie in (0, 1],
/// gamma has one entry per layer, and min_size >= 1.
NodeSet quasiclique_prune(const MultilayerGraph& graph, std::span<const double> gamma_per_layer, double min_sup,
                          std::size_t min_size);

/// The (k, lambda) thresholds quasiclique_prune uses.
struct PruneThresholds {
    std::uint32_t k = 0;
    std::size_t lambda = 1;
};
PruneThresholds quasiclique_thresholds(std::span<const double> gamma_per_layer, double min_sup,
                                       std::size_t min_size, std::size_t num_layers);

}  // namespace firmcore
