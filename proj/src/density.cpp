#include "firmcore/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "firmcore/parallel.hpp"

namespace firmcore {
namespace {

void check_beta(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be a positive real");
}

// Arg-max candidate. `size` is |S| for undirected cores, |S| + |T| otherwise.
struct Candidate {
    double rho = -1.0;
    std::size_t lambda = 0;
    std::uint32_t k = 0;
    std::uint32_t r = 0;
    std::size_t size = 0;

    bool valid() const noexcept { return lambda != 0; }
};

bool better(const Candidate& a, const Candidate& b) {
    if (!b.valid()) return a.valid();
    if (!a.valid()) return false;
    if (a.rho != b.rho) return a.rho > b.rho;
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    if (a.k != b.k) return a.k > b.k;
    if (a.r != b.r) return a.r > b.r;
    return a.size < b.size;
}

double selection_rho(std::span<const std::uint64_t> edges, double normalizer, double beta,
                     std::vector<double>& scratch) {
    scratch.resize(edges.size());
    for (std::size_t l = 0; l < edges.size(); ++l) scratch[l] = static_cast<double>(edges[l]) / normalizer;
    return best_layer_subset(scratch, beta).rho;
}

// Best (k, lambda)-FirmCore for one lambda. Nodes are added in decreasing
// order of their index so every k is one incremental step.
Candidate best_firmcore_for_lambda(const MultilayerGraph& graph, std::span<const std::uint32_t> core,
                                   std::size_t lambda, double beta) {
    const std::size_t layers = graph.num_layers();
    const std::uint32_t max_core = core.empty() ? 0 : *std::max_element(core.begin(), core.end());
    std::vector<std::vector<NodeId>> by_core(std::size_t{max_core} + 1);
    for (NodeId v = 0; v < core.size(); ++v) by_core[core[v]].push_back(v);

    std::vector<char> in_set(core.size(), 0);
    std::vector<std::uint64_t> edges(layers, 0);
    std::vector<double> scratch;
    std::size_t size = 0;
    Candidate best;
    for (std::uint32_t k = max_core; k >= 1; --k) {
        if (by_core[k].empty()) continue;  // same node set as k + 1
        for (NodeId v : by_core[k]) {
            for (LayerId l = 0; l < layers; ++l) {
                for (NodeId u : graph.neighbors(l, v)) edges[l] += in_set[u] ? 1 : 0;
            }
            in_set[v] = 1;
        }
        size += by_core[k].size();
        Candidate c;
        c.rho = selection_rho(edges, static_cast<double>(size), beta, scratch);
        c.lambda = lambda;
        c.k = k;
        c.size = size;
        if (better(c, best)) best = c;
    }
    return best;
}

// Best (k, r, lambda)-FirmD-Core for one (lambda, k), adding nodes to S and T
// in decreasing order of r.
Candidate best_firmdcore_for_slice(const DirectedMultilayerGraph& graph, std::span<const DCoreEntry> slice,
                                   std::size_t lambda, std::uint32_t k, double beta) {
    const std::size_t layers = graph.num_layers();
    std::uint32_t max_r = 0;
    for (const DCoreEntry& e : slice) max_r = std::max({max_r, e.s_index, e.t_index});
    std::vector<std::vector<NodeId>> s_at(std::size_t{max_r} + 1), t_at(std::size_t{max_r} + 1);
    for (const DCoreEntry& e : slice) {
        s_at[e.s_index].push_back(e.node);
        t_at[e.t_index].push_back(e.node);
    }

    std::vector<char> in_s(graph.num_nodes(), 0), in_t(graph.num_nodes(), 0);
    std::vector<std::uint64_t> edges(layers, 0);
    std::vector<double> scratch;
    std::size_t s_size = 0, t_size = 0;
    Candidate best;
    for (std::uint32_t r = max_r; r >= 1; --r) {
        if (s_at[r].empty() && t_at[r].empty()) continue;
        for (NodeId u : s_at[r]) {
            for (LayerId l = 0; l < layers; ++l) {
                for (NodeId w : graph.out_neighbors(l, u)) edges[l] += in_t[w] ? 1 : 0;
            }
            in_s[u] = 1;
        }
        for (NodeId v : t_at[r]) {
            for (LayerId l = 0; l < layers; ++l) {
                for (NodeId u : graph.in_neighbors(l, v)) edges[l] += in_s[u] ? 1 : 0;
            }
            in_t[v] = 1;
        }
        s_size += s_at[r].size();
        t_size += t_at[r].size();
        if (s_size == 0 || t_size == 0) continue;
        Candidate c;
        c.rho = selection_rho(edges, std::sqrt(static_cast<double>(s_size) * static_cast<double>(t_size)), beta,
                              scratch);
        c.lambda = lambda;
        c.k = k;
        c.r = r;
        c.size = s_size + t_size;
        if (better(c, best)) best = c;
    }
    return best;
}

Candidate reduce(const std::vector<Candidate>& candidates) {
    Candidate best;
    for (const Candidate& c : candidates) {
        if (better(c, best)) best = c;
    }
    return best;
}

std::uint32_t ceil_tolerant(double x) {
    return static_cast<std::uint32_t>(std::max(0.0, std::ceil(x - 1e-9)));
}

}  // namespace

LayerSelection best_layer_subset(std::span<const double> per_layer_density, double beta) {
    std::vector<LayerId> order(per_layer_density.size());
    std::iota(order.begin(), order.end(), LayerId{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](LayerId a, LayerId b) { return per_layer_density[a] > per_layer_density[b]; });
    LayerSelection best;
    std::size_t best_j = 0;
    for (std::size_t j = 1; j <= order.size(); ++j) {
        const double value = per_layer_density[order[j - 1]] * std::pow(static_cast<double>(j), beta);
        if (best_j == 0 || value > best.rho) {
            best.rho = value;
            best_j = j;
        }
    }
    best.layers.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best_j));
    return best;
}

DensityReport rho_undirected(const MultilayerGraph& graph, const NodeSet& nodes, double beta) {
    check_beta(beta);
    if (nodes.empty()) throw std::invalid_argument("density of an empty node set");
    const auto mask = nodes.to_mask(graph.num_nodes());

    DensityReport report;
    report.nodes = nodes;
    report.beta = beta;
    report.per_layer_density.resize(graph.num_layers());
    for (LayerId l = 0; l < graph.num_layers(); ++l) {
        std::uint64_t edges = 0;
        for (NodeId v : nodes) {
            for (NodeId u : graph.neighbors(l, v)) edges += (u > v && mask[u]) ? 1 : 0;
        }
        report.per_layer_density[l] = static_cast<double>(edges) / static_cast<double>(nodes.size());
    }
    auto selection = best_layer_subset(report.per_layer_density, beta);
    report.rho = selection.rho;
    report.chosen_layers = std::move(selection.layers);
    return report;
}

DensityReport rho_directed(const DirectedMultilayerGraph& graph, const NodeSet& s, const NodeSet& t, double beta) {
    check_beta(beta);
    if (s.empty() || t.empty()) throw std::invalid_argument("density with an empty side");
    s.to_mask(graph.num_nodes());
    const auto in_t = t.to_mask(graph.num_nodes());

    DensityReport report;
    report.directed = true;
    report.s = s;
    report.t = t;
    report.beta = beta;
    report.per_layer_density.resize(graph.num_layers());
    const double normalizer = std::sqrt(static_cast<double>(s.size()) * static_cast<double>(t.size()));
    for (LayerId l = 0; l < graph.num_layers(); ++l) {
        std::uint64_t edges = 0;
        for (NodeId u : s) {
            for (NodeId v : graph.out_neighbors(l, u)) edges += in_t[v] ? 1 : 0;
        }
        report.per_layer_density[l] = static_cast<double>(edges) / normalizer;
    }
    auto selection = best_layer_subset(report.per_layer_density, beta);
    report.rho = selection.rho;
    report.chosen_layers = std::move(selection.layers);
    return report;
}

DensityReport fc_approx(const MultilayerGraph& graph, double beta, std::size_t threads) {
    check_beta(beta);
    if (graph.num_nodes() == 0 || graph.num_layers() == 0) throw std::invalid_argument("empty graph");
    return fc_approx(graph, firmcore_decomposition(graph, threads), beta, threads);
}

DensityReport fc_approx(const MultilayerGraph& graph, const CoreIndexTable& table, double beta,
                        std::size_t threads) {
    check_beta(beta);
    if (graph.num_nodes() == 0 || graph.num_layers() == 0) throw std::invalid_argument("empty graph");
    if (table.num_nodes() != graph.num_nodes() || table.num_layers() != graph.num_layers()) {
        throw std::invalid_argument("core table does not match graph");
    }
    std::vector<Candidate> per_lambda(graph.num_layers());
    parallel_for(per_lambda.size(), threads, [&](std::size_t i) {
        per_lambda[i] = best_firmcore_for_lambda(graph, table.row(i + 1), i + 1, beta);
    });
    const Candidate best = reduce(per_lambda);
    if (!best.valid()) return rho_undirected(graph, NodeSet::all(graph.num_nodes()), beta);

    DensityReport report = rho_undirected(graph, extract_firmcore(table, best.k, best.lambda), beta);
    report.source_core = SourceCore{best.k, std::nullopt, best.lambda};
    return report;
}

DensityReport fdc_approx(const DirectedMultilayerGraph& graph, double beta, std::size_t threads) {
    check_beta(beta);
    if (graph.num_nodes() == 0 || graph.num_layers() == 0) throw std::invalid_argument("empty graph");
    return fdc_approx(graph, full_firmdcore(graph, threads), beta, threads);
}

DensityReport fdc_approx(const DirectedMultilayerGraph& graph, const DCoreIndexTable& table, double beta,
                         std::size_t threads) {
    check_beta(beta);
    if (graph.num_nodes() == 0 || graph.num_layers() == 0) throw std::invalid_argument("empty graph");
    if (table.num_nodes() != graph.num_nodes() || table.num_layers() != graph.num_layers()) {
        throw std::invalid_argument("core table does not match graph");
    }
    std::vector<Candidate> per_lambda(graph.num_layers());
    parallel_for(per_lambda.size(), threads, [&](std::size_t i) {
        const std::size_t lambda = i + 1;
        Candidate best;
        for (std::uint32_t k = 1; k <= table.k_max(lambda); ++k) {
            const Candidate c = best_firmdcore_for_slice(graph, table.slice(lambda, k), lambda, k, beta);
            if (better(c, best)) best = c;
        }
        per_lambda[i] = best;
    });
    const Candidate best = reduce(per_lambda);
    const NodeSet all = NodeSet::all(graph.num_nodes());
    if (!best.valid()) return rho_directed(graph, all, all, beta);

    const DirectedCore core = extract_firmdcore(table, best.k, best.r, best.lambda);
    DensityReport report = rho_directed(graph, core.s, core.t, beta);
    report.source_core = SourceCore{best.k, best.r, best.lambda};
    return report;
}

double psi_beta(std::size_t lambda_plus, double beta) {
    check_beta(beta);
    if (lambda_plus < 1) throw std::invalid_argument("lambda_plus must be >= 1");
    double best = 0.0;
    for (std::size_t xi = 0; xi < lambda_plus; ++xi) {
        const double value =
            static_cast<double>(lambda_plus - xi) * std::pow(static_cast<double>(xi + 1), beta);
        best = std::max(best, value);
    }
    return best;
}

double approx_factor(std::size_t num_layers, std::size_t lambda_plus, double beta) {
    if (num_layers < 1) throw std::invalid_argument("num_layers must be >= 1");
    return psi_beta(lambda_plus, beta) / (2.0 * std::pow(static_cast<double>(num_layers), beta + 1.0));
}

ApproxDiagnostics approx_diagnostics(std::size_t num_layers, std::size_t lambda_plus, double beta) {
    return {lambda_plus, psi_beta(lambda_plus, beta), approx_factor(num_layers, lambda_plus, beta)};
}

double lemma1_bound(std::uint32_t k, std::size_t lambda, std::size_t num_layers, double beta) {
    if (lambda < 1 || lambda > num_layers) throw std::invalid_argument("lambda must lie in [1, |L|]");
    if (k == 0) return 0.0;
    return static_cast<double>(k) / (2.0 * static_cast<double>(num_layers)) * psi_beta(lambda, beta);
}

double lemma4_bound(std::uint32_t k, std::uint32_t r, std::size_t lambda, std::size_t num_layers, double beta,
                    std::size_t s_size, std::size_t t_size) {
    if (lambda < 1 || lambda > num_layers) throw std::invalid_argument("lambda must lie in [1, |L|]");
    if (s_size == 0 || t_size == 0) throw std::invalid_argument("both sides must be non-empty");
    const double root_a = std::sqrt(static_cast<double>(s_size) / static_cast<double>(t_size));
    const double side = std::max(static_cast<double>(k) * root_a, static_cast<double>(r) / root_a);
    return psi_beta(lambda, beta) / static_cast<double>(num_layers) * side;
}

BffResult bff_mm(const MultilayerGraph& graph) {
    if (graph.num_nodes() == 0 || graph.num_layers() == 0) throw std::invalid_argument("empty graph");
    const auto core = firmcore_indices(graph, graph.num_layers());
    BffResult result;
    result.k_max = *std::max_element(core.begin(), core.end());
    result.nodes = extract_firmcore(core, result.k_max);
    return result;
}

std::uint32_t bff_objective(const MultilayerGraph& graph, const NodeSet& nodes) {
    if (nodes.empty()) return 0;
    const DegreeMatrix deg = degree_matrix(graph, nodes);
    std::uint32_t best = UINT32_MAX;
    for (NodeId v : nodes) {
        for (LayerId l = 0; l < graph.num_layers(); ++l) best = std::min(best, deg.at(v, l));
    }
    return graph.num_layers() == 0 ? 0 : best;
}

PruneThresholds quasiclique_thresholds(std::span<const double> gamma_per_layer, double min_sup,
                                       std::size_t min_size, std::size_t num_layers) {
    if (gamma_per_layer.size() != num_layers || num_layers == 0) {
        throw std::invalid_argument("gamma needs one value per layer");
    }
    for (double g : gamma_per_layer) {
        if (!(g > 0.0 && g <= 1.0)) throw std::invalid_argument("gamma values must lie in (0, 1]");
    }
    if (!(min_sup > 0.0 && min_sup <= 1.0)) throw std::invalid_argument("min_sup must lie in (0, 1]");
    if (min_size < 1) throw std::invalid_argument("min_size must be >= 1");

    const double gamma = *std::min_element(gamma_per_layer.begin(), gamma_per_layer.end());
    PruneThresholds th;
    th.k = ceil_tolerant(gamma * static_cast<double>(min_size - 1));
    th.lambda = std::clamp<std::size_t>(ceil_tolerant(min_sup * static_cast<double>(num_layers)), 1, num_layers);
    return th;
}

NodeSet quasiclique_prune(const MultilayerGraph& graph, std::span<const double> gamma_per_layer, double min_sup,
                          std::size_t min_size) {
    const PruneThresholds th = quasiclique_thresholds(gamma_per_layer, min_sup, min_size, graph.num_layers());
    if (th.k == 0) return NodeSet::all(graph.num_nodes());
    return extract_firmcore(firmcore_indices(graph, th.lambda), th.k);
}

}  // namespace firmcore
