#include "firmcore/edge_list.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

namespace firmcore {
namespace {

struct RawEdge {
    Label layer;
    Label src;
    Label dst;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

// Returns false for blank and comment lines.
bool parse_line(std::string_view line, std::size_t line_no, RawEdge& out) {
    std::size_t pos = 0;
    auto next_token = [&]() -> std::string_view {
        while (pos < line.size() && is_space(line[pos])) ++pos;
        const std::size_t start = pos;
        while (pos < line.size() && !is_space(line[pos])) ++pos;
        return line.substr(start, pos - start);
    };

    std::string_view first = next_token();
    if (first.empty() || first.front() == '#') return false;

    std::array<Label, 3> fields{};
    for (std::size_t i = 0; i < 3; ++i) {
        const std::string_view tok = i == 0 ? first : next_token();
        if (tok.empty()) {
            throw ParseError(line_no, "expected 3 fields `layer src dst`");
        }
        Label value = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
            throw ParseError(line_no, "not a non-negative integer: '" + std::string(tok) + "'");
        }
        fields[i] = value;
    }
    out = {fields[0], fields[1], fields[2]};
    return true;
}

struct Remapped {
    std::vector<Edge> edges;
    std::vector<Label> node_labels;
    std::vector<Label> layer_labels;
};

Remapped read_raw(std::istream& in) {
    std::vector<RawEdge> raw;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        RawEdge e{};
        if (parse_line(line, line_no, e)) raw.push_back(e);
    }
    if (raw.empty()) throw EmptyGraphError("edge list contains no edges");

    Remapped r;
    for (const RawEdge& e : raw) {
        r.node_labels.push_back(e.src);
        r.node_labels.push_back(e.dst);
        r.layer_labels.push_back(e.layer);
    }
    auto dedup = [](std::vector<Label>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedup(r.node_labels);
    dedup(r.layer_labels);

    auto index_of = [](const std::vector<Label>& sorted, Label x) {
        return static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
    };
    r.edges.reserve(raw.size());
    for (const RawEdge& e : raw) {
        r.edges.push_back({index_of(r.layer_labels, e.layer), index_of(r.node_labels, e.src),
                           index_of(r.node_labels, e.dst)});
    }
    return r;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return in;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

LoadedGraph<MultilayerGraph> read_edge_list(std::istream& in) {
    Remapped r = read_raw(in);
    LoadedGraph<MultilayerGraph> out;
    const std::size_t n = r.node_labels.size();
    const std::size_t layers = r.layer_labels.size();
    out.graph = MultilayerGraph::from_edges(n, layers, r.edges, std::move(r.node_labels),
                                            std::move(r.layer_labels), &out.dropped);
    return out;
}

LoadedGraph<DirectedMultilayerGraph> read_directed_edge_list(std::istream& in) {
    Remapped r = read_raw(in);
    LoadedGraph<DirectedMultilayerGraph> out;
    const std::size_t n = r.node_labels.size();
    const std::size_t layers = r.layer_labels.size();
    out.graph = DirectedMultilayerGraph::from_edges(n, layers, r.edges, std::move(r.node_labels),
                                                    std::move(r.layer_labels), &out.dropped);
    return out;
}

LoadedGraph<MultilayerGraph> load_edge_list(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    return read_edge_list(in);
}

LoadedGraph<DirectedMultilayerGraph> load_directed_edge_list(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    return read_directed_edge_list(in);
}

void write_edge_list(std::ostream& out, const MultilayerGraph& graph) {
    for (const Edge& e : graph.edges()) {
        out << graph.layer_label(e.layer) << ' ' << graph.node_label(e.src) << ' ' << graph.node_label(e.dst) << '\n';
    }
}

void write_edge_list(std::ostream& out, const DirectedMultilayerGraph& graph) {
    for (const Edge& e : graph.edges()) {
        out << graph.layer_label(e.layer) << ' ' << graph.node_label(e.src) << ' ' << graph.node_label(e.dst) << '\n';
    }
}

}  // namespace firmcore
