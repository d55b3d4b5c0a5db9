#include "firmcore/cli.hpp"

#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <new>
#include <sstream>

#include <CLI11.hpp>

#include "firmcore/density.hpp"
#include "firmcore/edge_list.hpp"
#include "firmcore/firmcore.hpp"
#include "firmcore/firmdcore.hpp"
#include "firmcore/parallel.hpp"
#include "firmcore/serialize.hpp"
#include "firmcore/top_lambda.hpp"

namespace firmcore::cli {
namespace {

// A flag value that is only known to be wrong once the graph is loaded.
class FlagError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

const std::map<std::string, Command>& command_names() {
    static const std::map<std::string, Command> names{
        {"decompose", Command::decompose}, {"ddecompose", Command::ddecompose}, {"densest", Command::densest},
        {"ddensest", Command::ddensest},   {"bff", Command::bff},               {"prune", Command::prune},
        {"stats", Command::stats},         {"bench", Command::bench},
    };
    return names;
}

bool is_directed_command(const RunConfig& c) {
    return c.command == Command::ddecompose || c.command == Command::ddensest ||
           ((c.command == Command::stats || c.command == Command::bench) && c.directed);
}

Format default_format(Command c) {
    switch (c) {
        case Command::decompose:
        case Command::ddecompose:
        case Command::prune:
            return Format::tsv;
        default:
            return Format::json;
    }
}

void check_lambda(const RunConfig& config, std::size_t num_layers) {
    if (config.lambda && *config.lambda > num_layers) {
        throw FlagError("--lambda " + std::to_string(*config.lambda) + " exceeds the number of layers (" +
                        std::to_string(num_layers) + ")");
    }
}

void emit_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << '\n'; }

double peak_rss_kib() {
    rusage usage{};
    getrusage(RUSAGE_SELF, &usage);
    return static_cast<double>(usage.ru_maxrss);
}

template <typename Fn>
double seconds_of(Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void run_decompose(const RunConfig& config, const Format format, std::ostream& out) {
    const auto loaded = load_edge_list(config.input);
    check_lambda(config, loaded.graph.num_layers());
    CoreIndexTable table(loaded.graph.num_nodes(), loaded.graph.num_layers());
    if (config.lambda) {
        const auto row = firmcore_indices(loaded.graph, *config.lambda);
        std::copy(row.begin(), row.end(), table.row(*config.lambda).begin());
    } else {
        table = firmcore_decomposition(loaded.graph, config.threads);
    }
    if (format == Format::tsv) {
        write_core_table_tsv(out, loaded.graph, table, config.lambda);
    } else {
        emit_json(out, core_table_json(loaded.graph, table, config.lambda));
    }
}

void run_ddecompose(const RunConfig& config, const Format format, std::ostream& out) {
    const auto loaded = load_directed_edge_list(config.input);
    const auto& graph = loaded.graph;
    check_lambda(config, graph.num_layers());
    DCoreIndexTable table;
    if (config.lambda) {
        std::vector<DCoreLambdaRow> rows(graph.num_layers());
        rows[*config.lambda - 1] = firmdcore_decomposition(graph, *config.lambda);
        table = DCoreIndexTable(graph.num_nodes(), std::move(rows));
    } else {
        table = full_firmdcore(graph, config.threads);
    }
    if (format == Format::tsv) {
        write_dcore_table_tsv(out, graph, table, config.lambda);
    } else {
        emit_json(out, dcore_table_json(graph, table, config.lambda));
    }
}

void run_bff(const RunConfig& config, std::ostream& out) {
    const auto loaded = load_edge_list(config.input);
    const BffResult result = bff_mm(loaded.graph);
    nlohmann::json j;
    j["k_max"] = result.k_max;
    j["objective"] = bff_objective(loaded.graph, result.nodes);
    j["nodes"] = node_labels_json(loaded.graph.node_labels(), result.nodes);
    emit_json(out, j);
}

void run_prune(const RunConfig& config, const Format format, std::ostream& out) {
    const auto loaded = load_edge_list(config.input);
    const auto& graph = loaded.graph;
    std::vector<double> gamma = config.gamma;
    if (gamma.size() == 1) gamma.assign(graph.num_layers(), gamma.front());
    if (gamma.size() != graph.num_layers()) {
        throw FlagError("--gamma needs 1 or " + std::to_string(graph.num_layers()) + " values");
    }
    const PruneThresholds th = quasiclique_thresholds(gamma, *config.min_sup, *config.min_size, graph.num_layers());
    const NodeSet kept = quasiclique_prune(graph, gamma, *config.min_sup, *config.min_size);
    if (format == Format::tsv) {
        out << "node\n";
        for (const auto& label : node_labels_json(graph.node_labels(), kept)) out << label.get<Label>() << '\n';
        return;
    }
    nlohmann::json j;
    j["k"] = th.k;
    j["lambda"] = th.lambda;
    j["nodes"] = node_labels_json(graph.node_labels(), kept);
    j["total_nodes"] = graph.num_nodes();
    j["pruning_ratio"] =
        graph.num_nodes() ? 1.0 - static_cast<double>(kept.size()) / static_cast<double>(graph.num_nodes()) : 0.0;
    emit_json(out, j);
}

// Histogram of Top-lambda degrees, for every lambda.
template <typename DegreeOf>
std::vector<std::map<std::uint32_t, std::size_t>> top_lambda_histograms(std::size_t nodes, std::size_t layers,
                                                                         DegreeOf&& degree_of) {
    std::vector<std::map<std::uint32_t, std::size_t>> hist(layers);
    std::vector<std::uint32_t> deg(layers);
    for (NodeId v = 0; v < nodes; ++v) {
        for (LayerId l = 0; l < layers; ++l) deg[l] = degree_of(l, v);
        std::sort(deg.begin(), deg.end(), std::greater<>());
        for (std::size_t i = 0; i < layers; ++i) ++hist[i][deg[i]];
    }
    return hist;
}

struct Stats {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::vector<Label> layer_labels;
    std::vector<std::size_t> layer_edges;
    std::map<std::string, std::vector<std::map<std::uint32_t, std::size_t>>> histograms;
};

void emit_stats(const Stats& s, const Format format, std::ostream& out) {
    if (format == Format::json) {
        nlohmann::json j;
        j["nodes"] = s.nodes;
        j["edges"] = s.edges;
        j["layers"] = s.layer_labels.size();
        nlohmann::json per_layer = nlohmann::json::array();
        for (std::size_t l = 0; l < s.layer_labels.size(); ++l) {
            per_layer.push_back({{"layer", s.layer_labels[l]},
                                 {"edges", s.layer_edges[l]},
                                 {"density", s.nodes ? static_cast<double>(s.layer_edges[l]) / s.nodes : 0.0}});
        }
        j["per_layer"] = std::move(per_layer);
        for (const auto& [name, hists] : s.histograms) {
            nlohmann::json by_lambda = nlohmann::json::array();
            for (std::size_t i = 0; i < hists.size(); ++i) {
                nlohmann::json bins = nlohmann::json::array();
                for (const auto& [degree, count] : hists[i]) bins.push_back({{"degree", degree}, {"count", count}});
                by_lambda.push_back({{"lambda", i + 1}, {"histogram", std::move(bins)}});
            }
            j[name] = std::move(by_lambda);
        }
        emit_json(out, j);
        return;
    }
    out << "kind\tkey\tvalue\n";
    out << "count\tnodes\t" << s.nodes << '\n';
    out << "count\tedges\t" << s.edges << '\n';
    out << "count\tlayers\t" << s.layer_labels.size() << '\n';
    for (std::size_t l = 0; l < s.layer_labels.size(); ++l) {
        out << "layer_edges\t" << s.layer_labels[l] << '\t' << s.layer_edges[l] << '\n';
        out << "layer_density\t" << s.layer_labels[l] << '\t'
            << (s.nodes ? static_cast<double>(s.layer_edges[l]) / s.nodes : 0.0) << '\n';
    }
    for (const auto& [name, hists] : s.histograms) {
        for (std::size_t i = 0; i < hists.size(); ++i) {
            for (const auto& [degree, count] : hists[i]) {
                out << name << '\t' << (i + 1) << ':' << degree << '\t' << count << '\n';
            }
        }
    }
}

void run_stats(const RunConfig& config, const Format format, std::ostream& out) {
    Stats s;
    if (config.directed) {
        const auto loaded = load_directed_edge_list(config.input);
        const auto& g = loaded.graph;
        s.nodes = g.num_nodes();
        s.edges = g.num_edges();
        s.layer_labels.assign(g.layer_labels().begin(), g.layer_labels().end());
        for (LayerId l = 0; l < g.num_layers(); ++l) s.layer_edges.push_back(g.num_edges(l));
        s.histograms["top_lambda_out_degree"] = top_lambda_histograms(
            g.num_nodes(), g.num_layers(), [&](LayerId l, NodeId v) { return g.out_degree(l, v); });
        s.histograms["top_lambda_in_degree"] = top_lambda_histograms(
            g.num_nodes(), g.num_layers(), [&](LayerId l, NodeId v) { return g.in_degree(l, v); });
    } else {
        const auto loaded = load_edge_list(config.input);
        const auto& g = loaded.graph;
        s.nodes = g.num_nodes();
        s.edges = g.num_edges();
        s.layer_labels.assign(g.layer_labels().begin(), g.layer_labels().end());
        for (LayerId l = 0; l < g.num_layers(); ++l) s.layer_edges.push_back(g.num_edges(l));
        s.histograms["top_lambda_degree"] = top_lambda_histograms(
            g.num_nodes(), g.num_layers(), [&](LayerId l, NodeId v) { return g.degree(l, v); });
    }
    emit_stats(s, format, out);
}

void run_bench(const RunConfig& config, const Format format, std::ostream& out) {
    nlohmann::json j;
    j["threads"] = config.threads;
    nlohmann::json series = nlohmann::json::array();
    if (config.directed) {
        const auto loaded = load_directed_edge_list(config.input);
        const auto& g = loaded.graph;
        j["nodes"] = g.num_nodes();
        j["edges"] = g.num_edges();
        j["layers"] = g.num_layers();
        j["seconds"] = seconds_of([&] { full_firmdcore(g, config.threads); });
    } else {
        const auto loaded = load_edge_list(config.input);
        const auto& g = loaded.graph;
        j["nodes"] = g.num_nodes();
        j["edges"] = g.num_edges();
        j["layers"] = g.num_layers();
        j["seconds"] = seconds_of([&] { firmcore_decomposition(g, config.threads); });
        // Runtime against the number of layers, over prefixes of the layer list.
        std::vector<std::size_t> counts;
        for (std::size_t c = 1; c < g.num_layers(); c *= 2) counts.push_back(c);
        counts.push_back(g.num_layers());
        for (std::size_t count : counts) {
            std::vector<LayerId> layers(count);
            std::iota(layers.begin(), layers.end(), LayerId{0});
            const MultilayerGraph prefix = select_layers(g, layers);
            const double secs = seconds_of([&] { firmcore_decomposition(prefix, config.threads); });
            series.push_back({{"layers", count}, {"edges", prefix.num_edges()}, {"seconds", secs}});
        }
    }
    j["peak_rss_kib"] = peak_rss_kib();
    j["layer_series"] = std::move(series);
    if (format == Format::json) {
        emit_json(out, j);
        return;
    }
    out << "metric\tvalue\n";
    for (const char* key : {"nodes", "edges", "layers", "threads", "seconds", "peak_rss_kib"}) {
        out << key << '\t' << j[key].dump() << '\n';
    }
    for (const auto& point : j["layer_series"]) {
        out << "seconds_at_layers_" << point["layers"].dump() << '\t' << point["seconds"].dump() << '\n';
    }
}

}  // namespace

std::optional<std::string> validate(const RunConfig& c) {
    if (c.input.empty()) return "--input is required";
    if (c.threads < 1) return "--threads must be >= 1";
    if (c.lambda && *c.lambda < 1) return "--lambda must be >= 1";
    const bool undirected_only = c.command == Command::decompose || c.command == Command::densest ||
                                 c.command == Command::bff || c.command == Command::prune;
    if (undirected_only && c.directed) return "--directed is not accepted here; use ddecompose or ddensest";
    if (c.command == Command::densest || c.command == Command::ddensest) {
        if (!c.beta) return "--beta is required";
        if (!(*c.beta > 0.0) || !std::isfinite(*c.beta)) return "--beta must be a positive real";
    }
    if (c.command == Command::prune) {
        if (c.gamma.empty()) return "--gamma is required";
        for (double g : c.gamma) {
            if (!(g > 0.0 && g <= 1.0)) return "--gamma values must lie in (0, 1]";
        }
        if (!c.min_sup) return "--min-sup is required";
        if (!(*c.min_sup > 0.0 && *c.min_sup <= 1.0)) return "--min-sup must lie in (0, 1]";
        if (!c.min_size) return "--min-size is required";
        if (*c.min_size < 1) return "--min-size must be >= 1";
    }
    const bool json_only = c.command == Command::densest || c.command == Command::ddensest || c.command == Command::bff;
    if (json_only && c.format == Format::tsv) return "this command only writes json";
    return std::nullopt;
}

std::variant<RunConfig, int> parse_command_line(int argc, const char* const* argv, std::ostream& out,
                                                std::ostream& err) {
    CLI::App app{"FirmCore and FirmD-Core decompositions of multilayer graphs"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig config;
    config.threads = default_thread_count();
    std::string format;
    app.add_option("--input", config.input, "Edge list: `layer src dst` per line");
    app.add_flag("--directed", config.directed, "Treat edges as directed (stats, bench)");
    app.add_option("--lambda", config.lambda, "Restrict output to one lambda");
    app.add_option("--beta", config.beta, "Density trade-off exponent");
    app.add_option("--gamma", config.gamma, "Per-layer quasi-clique ratios, comma-separated")->delimiter(',');
    app.add_option("--min-sup", config.min_sup, "Fraction of layers a quasi-clique must span");
    app.add_option("--min-size", config.min_size, "Smallest quasi-clique size");
    app.add_option("--threads", config.threads, "Worker threads (default: FIRMCORE_THREADS or 1)");
    app.add_option("--output", config.output, "Output file (default: standard output)");
    app.add_option("--format", format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));

    for (const auto& [name, command] : command_names()) {
        static const std::map<Command, const char*> help{
            {Command::decompose, "FirmCore indices for every lambda"},
            {Command::ddecompose, "FirmD-Core indices of a directed graph"},
            {Command::densest, "Approximate multilayer densest subgraph"},
            {Command::ddensest, "Approximate directed multilayer densest subgraph"},
            {Command::bff, "Exact BFF-MM solution"},
            {Command::prune, "Candidate nodes for frequent cross-graph quasi-cliques"},
            {Command::stats, "Counts, per-layer densities and Top-lambda degree histograms"},
            {Command::bench, "Decomposition wall-clock time and peak memory"},
        };
        app.add_subcommand(name, help.at(command));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidFlags;
    }
    config.command = command_names().at(app.get_subcommands().front()->get_name());
    if (format == "tsv") config.format = Format::tsv;
    if (format == "json") config.format = Format::json;
    return config;
}

int run(const RunConfig& input_config, std::ostream& out, std::ostream& err) {
    RunConfig config = input_config;
    if (auto message = validate(config)) {
        err << "error: " << *message << '\n';
        return kExitInvalidFlags;
    }
    config.directed = is_directed_command(config);
    const Format format = config.format.value_or(default_format(config.command));

    std::error_code ec;
    if (!std::filesystem::is_regular_file(config.input, ec)) {
        err << "error: cannot read " << config.input << '\n';
        return kExitParseError;
    }

    std::ostringstream buffer;
    try {
        switch (config.command) {
            case Command::decompose:
                run_decompose(config, format, buffer);
                break;
            case Command::ddecompose:
                run_ddecompose(config, format, buffer);
                break;
            case Command::densest: {
                const auto loaded = load_edge_list(config.input);
                emit_json(buffer, density_report_json(loaded.graph, fc_approx(loaded.graph, *config.beta, config.threads)));
                break;
            }
            case Command::ddensest: {
                const auto loaded = load_directed_edge_list(config.input);
                emit_json(buffer,
                          density_report_json(loaded.graph, fdc_approx(loaded.graph, *config.beta, config.threads)));
                break;
            }
            case Command::bff:
                run_bff(config, buffer);
                break;
            case Command::prune:
                run_prune(config, format, buffer);
                break;
            case Command::stats:
                run_stats(config, format, buffer);
                break;
            case Command::bench:
                run_bench(config, format, buffer);
                break;
        }
    } catch (const ParseError& e) {
        err << "error: " << config.input << ": " << e.what() << '\n';
        return kExitParseError;
    } catch (const EmptyGraphError& e) {
        err << "error: " << config.input << ": " << e.what() << '\n';
        return kExitParseError;
    } catch (const FlagError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidFlags;
    } catch (const std::bad_alloc&) {
        err << "error: out of memory\n";
        return kExitResource;
    } catch (const std::length_error& e) {
        err << "error: input too large: " << e.what() << '\n';
        return kExitResource;
    }

    if (config.output.empty()) {
        out << buffer.str();
        return kExitOk;
    }
    std::ofstream file(config.output, std::ios::binary);
    if (!file || !(file << buffer.str())) {
        err << "error: cannot write " << config.output << '\n';
        return kExitResource;
    }
    return kExitOk;
}

}  // namespace firmcore::cli
