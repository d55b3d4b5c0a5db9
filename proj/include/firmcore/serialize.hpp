#pragma once

#include <iosfwd>
#include <optional>

#include <json.hpp>

#include "firmcore/density.hpp"
#include "firmcore/firmcore.hpp"
#include "firmcore/firmdcore.hpp"
#include "firmcore/mlgraph.hpp"

namespace firmcore {

// All writers emit external node and layer labels.

/// `node<TAB>lambda<TAB>core`, rows sorted by (lambda, node label). With
/// `only_lambda` a single row block is written.
void write_core_table_tsv(std::ostream& out, const MultilayerGraph& graph, const CoreIndexTable& table,
                          std::optional<std::size_t> only_lambda = std::nullopt);
nlohmann::json core_table_json(const MultilayerGraph& graph, const CoreIndexTable& table,
                               std::optional<std::size_t> only_lambda = std::nullopt);

/// `node<TAB>lambda<TAB>k<TAB>t_index<TAB>s_index`, rows sorted by
/// (lambda, k, node label); nodes with both indices 0 are omitted.
void write_dcore_table_tsv(std::ostream& out, const DirectedMultilayerGraph& graph, const DCoreIndexTable& table,
                           std::optional<std::size_t> only_lambda = std::nullopt);
nlohmann::json dcore_table_json(const DirectedMultilayerGraph& graph, const DCoreIndexTable& table,
                                std::optional<std::size_t> only_lambda = std::nullopt);

/// Fields: rho, beta, layers, nodes (or S and T), per_layer_density,
/// source_core.
nlohmann::json density_report_json(const MultilayerGraph& graph, const DensityReport& report);
nlohmann::json density_report_json(const DirectedMultilayerGraph& graph, const DensityReport& report);

/// External labels of a node set, ascending.
nlohmann::json node_labels_json(std::span<const Label> labels, const NodeSet& nodes);

}  // namespace firmcore
