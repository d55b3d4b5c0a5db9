#include "firmcore/firmdcore.hpp"

#include <algorithm>
#include <deque>
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

using Row = std::span<const std::uint32_t>;

Row row_of(const std::vector<std::uint32_t>& flat, NodeId v, std::size_t layers) {
    return Row(flat).subspan(std::size_t{v} * layers, layers);
}

// One iteration of the outer k loop: S starts as the nodes whose Top-lambda
// out-degree reaches k, T as every node. Level r pops T-nodes whose Top-lambda
// in-degree from S is at most r, cascading S-removals as out-degrees into T
// drop. A node leaving either side during level r lies in the (k, r)-core but
// not in the (k, r + 1)-core, so r is recorded as its index.
std::vector<DCoreEntry> peel_fixed_k(const DirectedMultilayerGraph& graph, std::size_t lambda, std::uint32_t k,
                                     std::span<const std::uint32_t> top_out, const FirmCoreOptions& options) {
    const std::size_t n = graph.num_nodes();
    const std::size_t layers = graph.num_layers();

    std::vector<char> in_s(n, 0), in_t(n, 1);
    std::vector<std::uint32_t> out_deg(n * layers, 0), in_deg(n * layers, 0);
    // Layers in which an S-node still has >= k out-neighbors in T.
    std::vector<std::uint32_t> qualifying(n, 0);

    for (NodeId u = 0; u < n; ++u) {
        if (top_out[u] < k) continue;
        in_s[u] = 1;
        for (LayerId l = 0; l < layers; ++l) {
            const std::uint32_t d = graph.out_degree(l, u);
            out_deg[std::size_t{u} * layers + l] = d;
            qualifying[u] += d >= k ? 1 : 0;
            for (NodeId w : graph.out_neighbors(l, u)) ++in_deg[std::size_t{w} * layers + l];
        }
    }

    std::vector<std::uint32_t> bound(n);
    std::vector<std::uint32_t> scratch(layers);
    std::uint32_t max_bound = 0;
    for (NodeId v = 0; v < n; ++v) {
        bound[v] = top_lambda(row_of(in_deg, v, layers), lambda);
        max_bound = std::max(max_bound, bound[v]);
    }
    BucketQueue buckets(n, std::size_t{max_bound} + 1);
    for (NodeId v = 0; v < n; ++v) buckets.push(v, bound[v]);

    TopLambdaUpdater update(layers, lambda, options.update, options.hybrid_constant);
    std::vector<std::uint32_t> t_index(n, 0), s_index(n, 0);

    auto leave_s = [&](NodeId u, std::uint32_t r) {
        in_s[u] = 0;
        s_index[u] = r;
        for (LayerId l = 0; l < layers; ++l) {
            for (NodeId w : graph.out_neighbors(l, u)) {
                if (!in_t[w] || bound[w] <= r) continue;
                const std::uint32_t d = --in_deg[std::size_t{w} * layers + l];
                if (options.neighbor_short_circuit && d + 1 != bound[w]) continue;
                const std::uint32_t refreshed = std::max(update(row_of(in_deg, w, layers), bound[w]), r);
                if (refreshed != bound[w]) {
                    bound[w] = refreshed;
                    buckets.move(w, refreshed);
                }
            }
        }
    };

    for (std::uint32_t r = 0; r <= max_bound; ++r) {
        while (const auto picked = buckets.pop(r)) {
            const NodeId v = *picked;
            in_t[v] = 0;
            t_index[v] = r;
            for (LayerId l = 0; l < layers; ++l) {
                for (NodeId u : graph.in_neighbors(l, v)) {
                    if (!in_s[u]) continue;
                    if (--out_deg[std::size_t{u} * layers + l] + 1 == k && --qualifying[u] < lambda) {
                        leave_s(u, r);
                    }
                }
            }
        }
    }

    std::vector<DCoreEntry> entries;
    for (NodeId v = 0; v < n; ++v) {
        if (t_index[v] != 0 || s_index[v] != 0) entries.push_back({v, t_index[v], s_index[v]});
    }
    return entries;
}

std::vector<std::uint32_t> top_degrees(const DirectedMultilayerGraph& graph, std::size_t lambda, bool out) {
    const std::size_t layers = graph.num_layers();
    std::vector<std::uint32_t> result(graph.num_nodes());
    std::vector<std::uint32_t> deg(layers);
    for (NodeId v = 0; v < graph.num_nodes(); ++v) {
        for (LayerId l = 0; l < layers; ++l) deg[l] = out ? graph.out_degree(l, v) : graph.in_degree(l, v);
        result[v] = top_lambda(deg, lambda);
    }
    return result;
}

const DCoreEntry* find_entry(std::span<const DCoreEntry> slice, NodeId v) {
    const auto it = std::lower_bound(slice.begin(), slice.end(), v,
                                     [](const DCoreEntry& e, NodeId id) { return e.node < id; });
    return it != slice.end() && it->node == v ? &*it : nullptr;
}

}  // namespace

std::span<const DCoreEntry> DCoreIndexTable::slice(std::size_t lambda, std::uint32_t k) const {
    const auto& r = row(lambda);
    if (k == 0 || k > r.k_max) return {};
    return r.slices[k - 1];
}

std::uint32_t DCoreIndexTable::t_index(std::size_t lambda, std::uint32_t k, NodeId v) const {
    const auto* e = find_entry(slice(lambda, k), v);
    return e ? e->t_index : 0;
}

std::uint32_t DCoreIndexTable::s_index(std::size_t lambda, std::uint32_t k, NodeId v) const {
    const auto* e = find_entry(slice(lambda, k), v);
    return e ? e->s_index : 0;
}

DirectedCore firmdcore_fixed(const DirectedMultilayerGraph& graph, std::uint32_t k, std::uint32_t r,
                             std::size_t lambda) {
    check_lambda(lambda, graph.num_layers());
    const std::size_t n = graph.num_nodes();
    const std::size_t layers = graph.num_layers();

    std::vector<char> in_s(n, 1), in_t(n, 1);
    std::vector<std::uint32_t> out_deg(n * layers), in_deg(n * layers);
    std::vector<std::uint32_t> s_ok(n, 0), t_ok(n, 0);
    for (NodeId v = 0; v < n; ++v) {
        for (LayerId l = 0; l < layers; ++l) {
            out_deg[std::size_t{v} * layers + l] = graph.out_degree(l, v);
            in_deg[std::size_t{v} * layers + l] = graph.in_degree(l, v);
            s_ok[v] += graph.out_degree(l, v) >= k ? 1 : 0;
            t_ok[v] += graph.in_degree(l, v) >= r ? 1 : 0;
        }
    }

    // Pending removals: (node, from S?).
    std::deque<std::pair<NodeId, bool>> pending;
    for (NodeId v = 0; v < n; ++v) {
        if (s_ok[v] < lambda) {
            in_s[v] = 0;
            pending.emplace_back(v, true);
        }
        if (t_ok[v] < lambda) {
            in_t[v] = 0;
            pending.emplace_back(v, false);
        }
    }
    while (!pending.empty()) {
        const auto [v, from_s] = pending.front();
        pending.pop_front();
        for (LayerId l = 0; l < layers; ++l) {
            if (from_s) {
                for (NodeId w : graph.out_neighbors(l, v)) {
                    if (!in_t[w]) continue;
                    if (in_deg[std::size_t{w} * layers + l]-- == r && --t_ok[w] < lambda) {
                        in_t[w] = 0;
                        pending.emplace_back(w, false);
                    }
                }
            } else {
                for (NodeId u : graph.in_neighbors(l, v)) {
                    if (!in_s[u]) continue;
                    if (out_deg[std::size_t{u} * layers + l]-- == k && --s_ok[u] < lambda) {
                        in_s[u] = 0;
                        pending.emplace_back(u, true);
                    }
                }
            }
        }
    }

    DirectedCore core;
    std::vector<NodeId> s, t;
    for (NodeId v = 0; v < n; ++v) {
        if (in_s[v]) s.push_back(v);
        if (in_t[v]) t.push_back(v);
    }
    return {NodeSet(std::move(s)), NodeSet(std::move(t))};
}

DCoreLambdaRow firmdcore_decomposition(const DirectedMultilayerGraph& graph, std::size_t lambda,
                                       const FirmCoreOptions& options) {
    check_lambda(lambda, graph.num_layers());
    DCoreLambdaRow row;
    row.lambda = lambda;
    row.top_out = top_degrees(graph, lambda, true);
    row.top_in = top_degrees(graph, lambda, false);
    row.k_max = row.top_out.empty() ? 0 : *std::max_element(row.top_out.begin(), row.top_out.end());
    row.slices.reserve(row.k_max);
    for (std::uint32_t k = 1; k <= row.k_max; ++k) {
        row.slices.push_back(peel_fixed_k(graph, lambda, k, row.top_out, options));
    }
    return row;
}

DCoreIndexTable full_firmdcore(const DirectedMultilayerGraph& graph, std::size_t threads,
                               const FirmCoreOptions& options) {
    std::vector<DCoreLambdaRow> rows(graph.num_layers());
    parallel_for(rows.size(), threads,
                 [&](std::size_t i) { rows[i] = firmdcore_decomposition(graph, i + 1, options); });
    return DCoreIndexTable(graph.num_nodes(), std::move(rows));
}

DirectedCore extract_firmdcore(const DCoreIndexTable& table, std::uint32_t k, std::uint32_t r,
                               std::size_t lambda) {
    check_lambda(lambda, table.num_layers());
    const DCoreLambdaRow& row = table.row(lambda);
    std::vector<NodeId> s, t;
    const auto n = static_cast<NodeId>(table.num_nodes());
    if (k == 0) {
        // Condition (1) is vacuous, so S = V and T only needs in-degree from V.
        for (NodeId v = 0; v < n; ++v) {
            s.push_back(v);
            if (row.top_in[v] >= r) t.push_back(v);
        }
    } else if (r == 0) {
        for (NodeId v = 0; v < n; ++v) {
            if (row.top_out[v] >= k) s.push_back(v);
            t.push_back(v);
        }
    } else {
        for (const DCoreEntry& e : table.slice(lambda, k)) {
            if (e.s_index >= r) s.push_back(e.node);
            if (e.t_index >= r) t.push_back(e.node);
        }
    }
    return {NodeSet(std::move(s)), NodeSet(std::move(t))};
}

}  // namespace firmcore
