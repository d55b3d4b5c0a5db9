#include "firmcore/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace firmcore::oracle {
namespace {

using Mask = std::uint32_t;

class Deadline {
public:
    explicit Deadline(const OracleBudget& budget)
        : end_(std::chrono::steady_clock::now() +
               std::chrono::duration_cast<std::chrono::steady_clock::duration>(budget.time_cap)) {}

    void check() const {
        if (std::chrono::steady_clock::now() > end_) throw BudgetExceeded("oracle time cap exceeded");
    }

private:
    std::chrono::steady_clock::time_point end_;
};

void check_size(const OracleBudget& budget, std::size_t nodes, std::size_t layers, std::size_t node_cap) {
    if (budget.override_limits) return;
    const std::size_t cap = std::min(budget.max_nodes, node_cap);
    if (nodes > cap) {
        throw BudgetExceeded("oracle refuses " + std::to_string(nodes) + " nodes (limit " + std::to_string(cap) + ")");
    }
    if (layers > budget.max_layers) {
        throw BudgetExceeded("oracle refuses " + std::to_string(layers) + " layers (limit " +
                             std::to_string(budget.max_layers) + ")");
    }
}

void check_mask_width(std::size_t nodes) {
    if (nodes > 20) throw BudgetExceeded("exhaustive enumeration is limited to 20 nodes");
}

// adjacency[l][v]: bitmask of v's neighbors (out-neighbors when directed).
std::vector<std::vector<Mask>> bit_adjacency(const MultilayerGraph& g) {
    std::vector<std::vector<Mask>> adj(g.num_layers(), std::vector<Mask>(g.num_nodes(), 0));
    for (LayerId l = 0; l < g.num_layers(); ++l) {
        for (NodeId v = 0; v < g.num_nodes(); ++v) {
            for (NodeId u : g.neighbors(l, v)) adj[l][v] |= Mask{1} << u;
        }
    }
    return adj;
}

std::vector<std::vector<Mask>> bit_out_adjacency(const DirectedMultilayerGraph& g) {
    std::vector<std::vector<Mask>> adj(g.num_layers(), std::vector<Mask>(g.num_nodes(), 0));
    for (LayerId l = 0; l < g.num_layers(); ++l) {
        for (NodeId v = 0; v < g.num_nodes(); ++v) {
            for (NodeId u : g.out_neighbors(l, v)) adj[l][v] |= Mask{1} << u;
        }
    }
    return adj;
}

NodeSet mask_to_set(Mask m) {
    std::vector<NodeId> ids;
    for (NodeId v = 0; m != 0; ++v, m >>= 1) {
        if (m & 1) ids.push_back(v);
    }
    return NodeSet(std::move(ids));
}

NodeSet alive_to_set(const std::vector<char>& alive) {
    std::vector<NodeId> ids;
    for (std::size_t v = 0; v < alive.size(); ++v) {
        if (alive[v]) ids.push_back(static_cast<NodeId>(v));
    }
    return NodeSet(std::move(ids));
}

std::vector<NodeId> scan_order(std::size_t n, std::mt19937_64* rng) {
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    if (rng) std::shuffle(order.begin(), order.end(), *rng);
    return order;
}

}  // namespace

NodeSet naive_firmcore(const MultilayerGraph& graph, std::uint32_t k, std::size_t lambda, const OracleBudget& budget,
                       std::optional<std::uint64_t> shuffle_seed) {
    check_size(budget, graph.num_nodes(), graph.num_layers(), budget.max_nodes);
    const Deadline deadline(budget);
    std::optional<std::mt19937_64> rng;
    if (shuffle_seed) rng.emplace(*shuffle_seed);

    std::vector<char> alive(graph.num_nodes(), 1);
    bool removed = true;
    while (removed) {
        deadline.check();
        removed = false;
        for (NodeId v : scan_order(graph.num_nodes(), rng ? &*rng : nullptr)) {
            if (!alive[v]) continue;
            std::size_t good_layers = 0;
            for (LayerId l = 0; l < graph.num_layers(); ++l) {
                std::uint32_t d = 0;
                for (NodeId u : graph.neighbors(l, v)) d += alive[u] ? 1 : 0;
                if (d >= k) ++good_layers;
            }
            if (good_layers < lambda) {
                alive[v] = 0;
                removed = true;
                break;
            }
        }
    }
    return alive_to_set(alive);
}

SidePair naive_firmdcore(const DirectedMultilayerGraph& graph, std::uint32_t k, std::uint32_t r, std::size_t lambda,
                         const OracleBudget& budget, std::optional<std::uint64_t> shuffle_seed) {
    check_size(budget, graph.num_nodes(), graph.num_layers(), budget.max_nodes);
    const Deadline deadline(budget);
    std::optional<std::mt19937_64> rng;
    if (shuffle_seed) rng.emplace(*shuffle_seed);

    const std::size_t n = graph.num_nodes();
    std::vector<char> in_s(n, 1), in_t(n, 1);
    bool removed = true;
    while (removed) {
        deadline.check();
        removed = false;
        for (NodeId v : scan_order(n, rng ? &*rng : nullptr)) {
            if (in_s[v]) {
                std::size_t good = 0;
                for (LayerId l = 0; l < graph.num_layers(); ++l) {
                    std::uint32_t d = 0;
                    for (NodeId w : graph.out_neighbors(l, v)) d += in_t[w] ? 1 : 0;
                    if (d >= k) ++good;
                }
                if (good < lambda) {
                    in_s[v] = 0;
                    removed = true;
                    break;
                }
            }
            if (in_t[v]) {
                std::size_t good = 0;
                for (LayerId l = 0; l < graph.num_layers(); ++l) {
                    std::uint32_t d = 0;
                    for (NodeId u : graph.in_neighbors(l, v)) d += in_s[u] ? 1 : 0;
                    if (d >= r) ++good;
                }
                if (good < lambda) {
                    in_t[v] = 0;
                    removed = true;
                    break;
                }
            }
        }
    }
    return {alive_to_set(in_s), alive_to_set(in_t)};
}

std::vector<std::uint32_t> classic_core_numbers(const MultilayerGraph& graph, LayerId layer) {
    const std::size_t n = graph.num_nodes();
    std::vector<std::uint32_t> deg(n), pos(n), vert(n);
    std::uint32_t max_deg = 0;
    for (NodeId v = 0; v < n; ++v) {
        deg[v] = static_cast<std::uint32_t>(graph.neighbors(layer, v).size());
        max_deg = std::max(max_deg, deg[v]);
    }
    std::vector<std::uint32_t> bin(std::size_t{max_deg} + 1, 0);
    for (NodeId v = 0; v < n; ++v) ++bin[deg[v]];
    std::uint32_t start = 0;
    for (auto& b : bin) {
        const std::uint32_t count = b;
        b = start;
        start += count;
    }
    for (NodeId v = 0; v < n; ++v) {
        pos[v] = bin[deg[v]];
        vert[pos[v]] = v;
        ++bin[deg[v]];
    }
    for (std::size_t d = max_deg; d >= 1; --d) bin[d] = bin[d - 1];
    if (!bin.empty()) bin[0] = 0;

    for (std::size_t i = 0; i < n; ++i) {
        const NodeId v = vert[i];
        for (NodeId u : graph.neighbors(layer, v)) {
            if (deg[u] > deg[v]) {
                const std::uint32_t du = deg[u];
                const std::uint32_t pu = pos[u];
                const std::uint32_t pw = bin[du];
                const NodeId w = vert[pw];
                if (u != w) {
                    pos[u] = pw;
                    vert[pu] = w;
                    pos[w] = pu;
                    vert[pw] = u;
                }
                ++bin[du];
                --deg[u];
            }
        }
    }
    return deg;
}

SidePair xy_core(const DirectedMultilayerGraph& graph, LayerId layer, std::uint32_t x, std::uint32_t y) {
    const std::size_t n = graph.num_nodes();
    std::vector<char> in_s(n, 1), in_t(n, 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (NodeId v = 0; v < n; ++v) {
            if (in_s[v]) {
                std::uint32_t d = 0;
                for (NodeId w : graph.out_neighbors(layer, v)) d += in_t[w] ? 1 : 0;
                if (d < x) {
                    in_s[v] = 0;
                    changed = true;
                }
            }
            if (in_t[v]) {
                std::uint32_t d = 0;
                for (NodeId u : graph.in_neighbors(layer, v)) d += in_s[u] ? 1 : 0;
                if (d < y) {
                    in_t[v] = 0;
                    changed = true;
                }
            }
        }
    }
    return {alive_to_set(in_s), alive_to_set(in_t)};
}

double rho_by_enumeration(std::span<const std::uint64_t> edges_per_layer, double normalizer, double beta) {
    const std::size_t layers = edges_per_layer.size();
    double best = 0.0;
    for (Mask subset = 1; subset < (Mask{1} << layers); ++subset) {
        double min_density = std::numeric_limits<double>::infinity();
        for (std::size_t l = 0; l < layers; ++l) {
            if (subset & (Mask{1} << l)) {
                min_density = std::min(min_density, static_cast<double>(edges_per_layer[l]) / normalizer);
            }
        }
        best = std::max(best, min_density * std::pow(static_cast<double>(std::popcount(subset)), beta));
    }
    return best;
}

DensestUndirected exhaustive_densest(const MultilayerGraph& graph, double beta, const OracleBudget& budget) {
    check_size(budget, graph.num_nodes(), graph.num_layers(), 12);
    check_mask_width(graph.num_nodes());
    const Deadline deadline(budget);
    const auto adj = bit_adjacency(graph);
    const std::size_t n = graph.num_nodes();

    DensestUndirected best;
    best.rho = -1.0;
    std::vector<std::uint64_t> edges(graph.num_layers());
    for (Mask s = 1; s < (Mask{1} << n); ++s) {
        if ((s & 0xFFF) == 0) deadline.check();
        for (LayerId l = 0; l < graph.num_layers(); ++l) {
            std::uint64_t twice = 0;
            for (NodeId v = 0; v < n; ++v) {
                if (s & (Mask{1} << v)) twice += static_cast<std::uint64_t>(std::popcount(adj[l][v] & s));
            }
            edges[l] = twice / 2;
        }
        const double rho = rho_by_enumeration(edges, static_cast<double>(std::popcount(s)), beta);
        if (rho > best.rho) {
            best.rho = rho;
            best.nodes = mask_to_set(s);
        }
    }
    if (best.rho < 0.0) best.rho = 0.0;
    return best;
}

DensestDirected exhaustive_densest(const DirectedMultilayerGraph& graph, double beta, const OracleBudget& budget) {
    check_size(budget, graph.num_nodes(), graph.num_layers(), 8);
    check_mask_width(graph.num_nodes());
    const Deadline deadline(budget);
    const auto out = bit_out_adjacency(graph);
    const std::size_t n = graph.num_nodes();

    DensestDirected best;
    best.rho = -1.0;
    std::vector<std::uint64_t> edges(graph.num_layers());
    for (Mask s = 1; s < (Mask{1} << n); ++s) {
        deadline.check();
        for (Mask t = 1; t < (Mask{1} << n); ++t) {
            for (LayerId l = 0; l < graph.num_layers(); ++l) {
                std::uint64_t e = 0;
                for (NodeId u = 0; u < n; ++u) {
                    if (s & (Mask{1} << u)) e += static_cast<std::uint64_t>(std::popcount(out[l][u] & t));
                }
                edges[l] = e;
            }
            const double norm = std::sqrt(static_cast<double>(std::popcount(s)) * std::popcount(t));
            const double rho = rho_by_enumeration(edges, norm, beta);
            if (rho > best.rho) {
                best.rho = rho;
                best.s = mask_to_set(s);
                best.t = mask_to_set(t);
            }
        }
    }
    if (best.rho < 0.0) best.rho = 0.0;
    return best;
}

std::vector<NodeSet> exhaustive_quasicliques(const MultilayerGraph& graph, std::span<const double> gamma,
                                             double min_sup, std::size_t min_size, const OracleBudget& budget) {
    check_size(budget, graph.num_nodes(), graph.num_layers(), 10);
    check_mask_width(graph.num_nodes());
    const Deadline deadline(budget);
    const auto adj = bit_adjacency(graph);
    const std::size_t n = graph.num_nodes();
    const auto needed_layers = static_cast<std::size_t>(std::ceil(min_sup * static_cast<double>(graph.num_layers())));

    std::vector<Mask> valid;
    for (Mask h = 1; h < (Mask{1} << n); ++h) {
        const auto size = static_cast<std::size_t>(std::popcount(h));
        if (size < min_size) continue;
        std::size_t layers_ok = 0;
        for (LayerId l = 0; l < graph.num_layers(); ++l) {
            const auto need = static_cast<int>(std::ceil(gamma[l] * static_cast<double>(size - 1)));
            bool ok = true;
            for (NodeId v = 0; v < n && ok; ++v) {
                if ((h & (Mask{1} << v)) && std::popcount(adj[l][v] & h) < need) ok = false;
            }
            layers_ok += ok ? 1 : 0;
        }
        if (layers_ok >= needed_layers) valid.push_back(h);
    }
    deadline.check();

    std::vector<NodeSet> maximal;
    for (Mask h : valid) {
        const bool dominated =
            std::any_of(valid.begin(), valid.end(), [h](Mask other) { return other != h && (other & h) == h; });
        if (!dominated) maximal.push_back(mask_to_set(h));
    }
    return maximal;
}

std::uint32_t exhaustive_bff(const MultilayerGraph& graph, const OracleBudget& budget) {
    check_size(budget, graph.num_nodes(), graph.num_layers(), 12);
    check_mask_width(graph.num_nodes());
    const Deadline deadline(budget);
    const auto adj = bit_adjacency(graph);
    const std::size_t n = graph.num_nodes();

    std::uint32_t best = 0;
    for (Mask s = 1; s < (Mask{1} << n); ++s) {
        if ((s & 0xFFF) == 0) deadline.check();
        std::uint32_t worst = std::numeric_limits<std::uint32_t>::max();
        for (LayerId l = 0; l < graph.num_layers(); ++l) {
            for (NodeId v = 0; v < n; ++v) {
                if (s & (Mask{1} << v)) {
                    worst = std::min(worst, static_cast<std::uint32_t>(std::popcount(adj[l][v] & s)));
                }
            }
        }
        if (graph.num_layers() > 0) best = std::max(best, worst);
    }
    return best;
}

std::size_t exact_lambda_plus(const MultilayerGraph& graph, const OracleBudget& budget) {
    check_size(budget, graph.num_nodes(), graph.num_layers(), 12);
    check_mask_width(graph.num_nodes());
    const auto adj = bit_adjacency(graph);
    const std::size_t n = graph.num_nodes();

    // Densest single-layer subgraphs, compared exactly as fractions e / |S|.
    std::uint64_t best_e = 0, best_size = 1;
    std::uint32_t min_mu = std::numeric_limits<std::uint32_t>::max();
    for (Mask s = 1; s < (Mask{1} << n); ++s) {
        const auto size = static_cast<std::uint64_t>(std::popcount(s));
        for (LayerId l = 0; l < graph.num_layers(); ++l) {
            std::uint64_t twice = 0;
            std::uint32_t mu = std::numeric_limits<std::uint32_t>::max();
            for (NodeId v = 0; v < n; ++v) {
                if (s & (Mask{1} << v)) {
                    const auto d = static_cast<std::uint32_t>(std::popcount(adj[l][v] & s));
                    twice += d;
                    mu = std::min(mu, d);
                }
            }
            const std::uint64_t e = twice / 2;
            const std::uint64_t lhs = e * best_size, rhs = best_e * size;
            if (lhs > rhs) {
                best_e = e;
                best_size = size;
                min_mu = mu;
            } else if (lhs == rhs) {
                min_mu = std::min(min_mu, mu);
            }
        }
    }
    if (best_e == 0) return 0;

    std::size_t lambda_plus = 0;
    for (std::size_t lambda = 1; lambda <= graph.num_layers(); ++lambda) {
        if (!naive_firmcore(graph, min_mu, lambda, budget).empty()) lambda_plus = lambda;
    }
    return lambda_plus;
}

std::size_t exact_lambda_hat(const DirectedMultilayerGraph& graph, const OracleBudget& budget) {
    check_size(budget, graph.num_nodes(), graph.num_layers(), 8);
    check_mask_width(graph.num_nodes());
    const Deadline deadline(budget);
    const auto out = bit_out_adjacency(graph);
    const std::size_t n = graph.num_nodes();
    const std::size_t layers = graph.num_layers();

    // Densest single-layer (S, T) pairs; density e / sqrt(|S||T|) compared
    // exactly through e^2 / (|S||T|).
    std::uint64_t best_e2 = 0, best_st = 1;
    std::vector<char> densest_layer(layers, 0);
    for (Mask s = 1; s < (Mask{1} << n); ++s) {
        deadline.check();
        for (Mask t = 1; t < (Mask{1} << n); ++t) {
            const auto st = static_cast<std::uint64_t>(std::popcount(s) * std::popcount(t));
            for (LayerId l = 0; l < layers; ++l) {
                std::uint64_t e = 0;
                for (NodeId u = 0; u < n; ++u) {
                    if (s & (Mask{1} << u)) e += static_cast<std::uint64_t>(std::popcount(out[l][u] & t));
                }
                const std::uint64_t lhs = e * e * best_st, rhs = best_e2 * st;
                if (lhs > rhs) {
                    best_e2 = e * e;
                    best_st = st;
                    std::fill(densest_layer.begin(), densest_layer.end(), 0);
                    densest_layer[l] = 1;
                } else if (lhs == rhs && e > 0) {
                    densest_layer[l] = 1;
                }
            }
        }
    }
    if (best_e2 == 0) return 0;

    // Smallest maximum cn-pair product over the densest layers.
    std::uint64_t target = std::numeric_limits<std::uint64_t>::max();
    for (LayerId l = 0; l < layers; ++l) {
        if (!densest_layer[l]) continue;
        std::uint64_t cn = 0;
        for (std::uint32_t x = 1; x < n; ++x) {
            for (std::uint32_t y = 1; y < n; ++y) {
                const SidePair core = xy_core(graph, l, x, y);
                if (!core.s.empty() && !core.t.empty()) cn = std::max<std::uint64_t>(cn, std::uint64_t{x} * y);
            }
        }
        target = std::min(target, cn);
    }

    std::size_t lambda_hat = 0;
    for (std::size_t lambda = 1; lambda <= layers; ++lambda) {
        bool found = false;
        for (std::uint32_t k = 1; k < n && !found; ++k) {
            for (std::uint32_t r = 1; r < n && !found; ++r) {
                if (std::uint64_t{k} * r < target) continue;
                const SidePair core = naive_firmdcore(graph, k, r, lambda, budget);
                found = !core.s.empty() && !core.t.empty();
            }
        }
        if (found) lambda_hat = lambda;
    }
    return lambda_hat;
}

}  // namespace firmcore::oracle
