#include "firmcore/serialize.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

namespace firmcore {
namespace {

// Internal node ids ordered by external label.
std::vector<NodeId> by_label(std::span<const Label> labels) {
    std::vector<NodeId> order(labels.size());
    std::iota(order.begin(), order.end(), NodeId{0});
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return labels[a] < labels[b]; });
    return order;
}

std::pair<std::size_t, std::size_t> lambda_range(std::size_t num_layers, std::optional<std::size_t> only) {
    if (only) return {*only, *only};
    return {1, num_layers};
}

struct DCoreRow {
    Label node;
    std::size_t lambda;
    std::uint32_t k;
    std::uint32_t t_index;
    std::uint32_t s_index;
};

std::vector<DCoreRow> dcore_rows(const DirectedMultilayerGraph& graph, const DCoreIndexTable& table,
                                 std::optional<std::size_t> only_lambda) {
    std::vector<DCoreRow> rows;
    const auto [first, last] = lambda_range(table.num_layers(), only_lambda);
    for (std::size_t lambda = first; lambda <= last; ++lambda) {
        for (std::uint32_t k = 1; k <= table.k_max(lambda); ++k) {
            const std::size_t begin = rows.size();
            for (const DCoreEntry& e : table.slice(lambda, k)) {
                rows.push_back({graph.node_label(e.node), lambda, k, e.t_index, e.s_index});
            }
            std::sort(rows.begin() + static_cast<std::ptrdiff_t>(begin), rows.end(),
                      [](const DCoreRow& a, const DCoreRow& b) { return a.node < b.node; });
        }
    }
    return rows;
}

nlohmann::json layers_json(std::span<const Label> layer_labels, const std::vector<LayerId>& layers) {
    nlohmann::json out = nlohmann::json::array();
    for (LayerId l : layers) out.push_back(layer_labels[l]);
    return out;
}

nlohmann::json report_common(std::span<const Label> layer_labels, const DensityReport& report) {
    nlohmann::json j;
    j["rho"] = report.rho;
    j["beta"] = report.beta;
    j["layers"] = layers_json(layer_labels, report.chosen_layers);
    nlohmann::json per_layer = nlohmann::json::array();
    for (LayerId l : by_label(layer_labels)) {
        per_layer.push_back({{"layer", layer_labels[l]}, {"density", report.per_layer_density[l]}});
    }
    j["per_layer_density"] = std::move(per_layer);
    if (report.source_core) {
        nlohmann::json core{{"k", report.source_core->k}, {"lambda", report.source_core->lambda}};
        if (report.source_core->r) core["r"] = *report.source_core->r;
        j["source_core"] = std::move(core);
    } else {
        j["source_core"] = nullptr;
    }
    return j;
}

}  // namespace

nlohmann::json node_labels_json(std::span<const Label> labels, const NodeSet& nodes) {
    std::vector<Label> out;
    out.reserve(nodes.size());
    for (NodeId v : nodes) out.push_back(labels[v]);
    std::sort(out.begin(), out.end());
    return out;
}

void write_core_table_tsv(std::ostream& out, const MultilayerGraph& graph, const CoreIndexTable& table,
                          std::optional<std::size_t> only_lambda) {
    out << "node\tlambda\tcore\n";
    const auto order = by_label(graph.node_labels());
    const auto [first, last] = lambda_range(table.num_layers(), only_lambda);
    for (std::size_t lambda = first; lambda <= last; ++lambda) {
        for (NodeId v : order) {
            out << graph.node_label(v) << '\t' << lambda << '\t' << table.core(lambda, v) << '\n';
        }
    }
}

nlohmann::json core_table_json(const MultilayerGraph& graph, const CoreIndexTable& table,
                               std::optional<std::size_t> only_lambda) {
    nlohmann::json rows = nlohmann::json::array();
    const auto order = by_label(graph.node_labels());
    const auto [first, last] = lambda_range(table.num_layers(), only_lambda);
    for (std::size_t lambda = first; lambda <= last; ++lambda) {
        for (NodeId v : order) {
            rows.push_back({{"node", graph.node_label(v)}, {"lambda", lambda}, {"core", table.core(lambda, v)}});
        }
    }
    return rows;
}

void write_dcore_table_tsv(std::ostream& out, const DirectedMultilayerGraph& graph, const DCoreIndexTable& table,
                           std::optional<std::size_t> only_lambda) {
    out << "node\tlambda\tk\tt_index\ts_index\n";
    for (const DCoreRow& r : dcore_rows(graph, table, only_lambda)) {
        out << r.node << '\t' << r.lambda << '\t' << r.k << '\t' << r.t_index << '\t' << r.s_index << '\n';
    }
}

nlohmann::json dcore_table_json(const DirectedMultilayerGraph& graph, const DCoreIndexTable& table,
                                std::optional<std::size_t> only_lambda) {
    nlohmann::json rows = nlohmann::json::array();
    for (const DCoreRow& r : dcore_rows(graph, table, only_lambda)) {
        rows.push_back({{"node", r.node},
                        {"lambda", r.lambda},
                        {"k", r.k},
                        {"t_index", r.t_index},
                        {"s_index", r.s_index}});
    }
    return rows;
}

nlohmann::json density_report_json(const MultilayerGraph& graph, const DensityReport& report) {
    nlohmann::json j = report_common(graph.layer_labels(), report);
    j["nodes"] = node_labels_json(graph.node_labels(), report.nodes);
    return j;
}

nlohmann::json density_report_json(const DirectedMultilayerGraph& graph, const DensityReport& report) {
    nlohmann::json j = report_common(graph.layer_labels(), report);
    j["S"] = node_labels_json(graph.node_labels(), report.s);
    j["T"] = node_labels_json(graph.node_labels(), report.t);
    return j;
}

}  // namespace firmcore
