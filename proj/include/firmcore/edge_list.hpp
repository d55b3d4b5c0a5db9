#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "firmcore/mlgraph.hpp"

namespace firmcore {

/// A data line could not be parsed. Carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// The input held no edge lines at all.
class EmptyGraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <typename Graph>
struct LoadedGraph {
    Graph graph;
    IngestStats dropped;
};

// Text format: one edge per line, `layer src dst` as non-negative integers
// separated by whitespace. Further columns are ignored, `#` starts a comment
// line, CRLF is accepted. External ids are remapped to dense internal ids in
// ascending external order.

LoadedGraph<MultilayerGraph> read_edge_list(std::istream& in);
LoadedGraph<DirectedMultilayerGraph> read_directed_edge_list(std::istream& in);

/// Throws std::runtime_error if the file cannot be opened.
LoadedGraph<MultilayerGraph> load_edge_list(const std::filesystem::path& path);
LoadedGraph<DirectedMultilayerGraph> load_directed_edge_list(const std::filesystem::path& path);

/// Writes `layer src dst` lines using external labels. Isolated nodes have no
/// line and do not survive a round trip.
void write_edge_list(std::ostream& out, const MultilayerGraph& graph);
void write_edge_list(std::ostream& out, const DirectedMultilayerGraph& graph);

}  // namespace firmcore
