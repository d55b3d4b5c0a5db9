#include <doctest.h>

#include <random>
#include <sstream>

#include "firmcore/bucket_queue.hpp"
#include "firmcore/edge_list.hpp"
#include "firmcore/mlgraph.hpp"
#include "firmcore/synthetic.hpp"
#include "support.hpp"

using namespace firmcore;
using firmcore::testing::make_graph;
using firmcore::testing::random_digraph;
using firmcore::testing::random_graph;

namespace {

std::vector<std::pair<std::uint64_t, std::uint64_t>> labelled_edges(const MultilayerGraph& g, LayerId l) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (const Edge& e : g.edges()) {
        if (e.layer != l) continue;
        auto a = g.node_label(e.src), b = g.node_label(e.dst);
        out.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(out.begin(), out.end());
    return out;
}

void check_undirected_invariants(const MultilayerGraph& g) {
    for (LayerId l = 0; l < g.num_layers(); ++l) {
        for (NodeId v = 0; v < g.num_nodes(); ++v) {
            auto row = g.neighbors(l, v);
            CHECK(std::is_sorted(row.begin(), row.end()));
            CHECK(std::adjacent_find(row.begin(), row.end()) == row.end());
            for (NodeId u : row) {
                REQUIRE(u < g.num_nodes());
                CHECK(u != v);
                auto back = g.neighbors(l, u);
                CHECK(std::binary_search(back.begin(), back.end(), v));
            }
        }
    }
}

void check_transpose(const DirectedMultilayerGraph& g) {
    for (LayerId l = 0; l < g.num_layers(); ++l) {
        std::size_t out_total = 0, in_total = 0;
        for (NodeId v = 0; v < g.num_nodes(); ++v) {
            out_total += g.out_degree(l, v);
            in_total += g.in_degree(l, v);
            for (NodeId u : g.out_neighbors(l, v)) {
                CHECK(u != v);
                auto in = g.in_neighbors(l, u);
                CHECK(std::binary_search(in.begin(), in.end(), v));
            }
        }
        CHECK(out_total == in_total);
        CHECK(out_total == g.num_edges(l));
    }
}

}  // namespace

TEST_CASE("node set keeps strict order") {
    CHECK_THROWS_AS(NodeSet({2, 1}), std::invalid_argument);
    CHECK_THROWS_AS(NodeSet({1, 1}), std::invalid_argument);
    const NodeSet s = NodeSet::from_unsorted({5, 1, 5, 3});
    CHECK(std::vector<NodeId>(s.begin(), s.end()) == std::vector<NodeId>{1, 3, 5});
    CHECK(s.contains(3));
    CHECK_FALSE(s.contains(2));
    CHECK(NodeSet({1, 5}).is_subset_of(s));
    CHECK_FALSE(NodeSet({1, 2}).is_subset_of(s));
    CHECK(NodeSet::from_mask(s.to_mask(6)) == s);
    CHECK_THROWS_AS(s.to_mask(5), std::out_of_range);
    CHECK(NodeSet::all(3) == NodeSet({0, 1, 2}));
}

TEST_CASE("edge list: three edges over two layers") {
    std::istringstream in("1 10 20\n1 20 30\n2 10 30\n");
    const auto loaded = read_edge_list(in);
    CHECK(loaded.graph.num_nodes() == 3);
    CHECK(loaded.graph.num_layers() == 2);
    CHECK(loaded.graph.num_edges() == 3);
    CHECK(loaded.graph.node_label(0) == 10);
    CHECK(loaded.graph.node_label(2) == 30);
    CHECK(loaded.graph.layer_label(1) == 2);
    check_undirected_invariants(loaded.graph);
}

TEST_CASE("edge list: self-loop dropped and counted") {
    std::istringstream in("1 10 10\n1 10 20\n");
    const auto loaded = read_edge_list(in);
    CHECK(loaded.dropped.self_loops == 1);
    CHECK(loaded.graph.num_edges() == 1);
}

TEST_CASE("edge list: reversed duplicate collapses") {
    std::istringstream in("1 10 20\n1 20 10\n");
    const auto loaded = read_edge_list(in);
    CHECK(loaded.graph.num_edges() == 1);
    CHECK(loaded.dropped.duplicates == 1);

    std::istringstream din("1 10 20\n1 20 10\n1 10 20\n");
    const auto directed = read_directed_edge_list(din);
    CHECK(directed.graph.num_edges() == 2);
    CHECK(directed.dropped.duplicates == 1);
}

TEST_CASE("edge list: comments, blank lines, CRLF and extra columns") {
    std::istringstream in("# header\n\n1 10 20 0.5\r\n  2 20 30\t7\n");
    const auto loaded = read_edge_list(in);
    CHECK(loaded.graph.num_edges() == 2);
    CHECK(loaded.graph.num_layers() == 2);
}

TEST_CASE("edge list: malformed line reports its number") {
    std::istringstream in("1 10 20\n# note\n1 x 30\n");
    try {
        read_edge_list(in);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    std::istringstream short_line("1 10\n");
    CHECK_THROWS_AS(read_edge_list(short_line), ParseError);
    std::istringstream negative("1 -10 20\n");
    CHECK_THROWS_AS(read_edge_list(negative), ParseError);
}

TEST_CASE("edge list: empty input") {
    std::istringstream empty("");
    CHECK_THROWS_AS(read_edge_list(empty), EmptyGraphError);
    std::istringstream comments("# only\n\n");
    CHECK_THROWS_AS(read_directed_edge_list(comments), EmptyGraphError);
    CHECK_THROWS_AS(load_edge_list("/nonexistent/file.txt"), std::runtime_error);
}

TEST_CASE("edge list: round trip preserves labelled edges") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = random_graph(rng, 9, 3, 0.4);
        if (g.num_edges() == 0) continue;
        std::ostringstream out;
        write_edge_list(out, g);
        std::istringstream in(out.str());
        const auto back = read_edge_list(in).graph;
        // Layers without edges vanish from the file, so compare by label.
        for (LayerId l = 0; l < g.num_layers(); ++l) {
            const auto want = labelled_edges(g, l);
            if (want.empty()) continue;
            const auto it = std::find(back.layer_labels().begin(), back.layer_labels().end(), g.layer_label(l));
            REQUIRE(it != back.layer_labels().end());
            CHECK(labelled_edges(back, static_cast<LayerId>(it - back.layer_labels().begin())) == want);
        }
    }
}

TEST_CASE("directed edge list: round trip and transpose") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = random_digraph(rng, 7, 2, 0.3);
        check_transpose(g);
        if (g.num_edges() == 0) continue;
        std::ostringstream out;
        write_edge_list(out, g);
        std::istringstream in(out.str());
        const auto back = read_directed_edge_list(in).graph;
        check_transpose(back);
        CHECK(back.num_edges() == g.num_edges());
        std::ostringstream again;
        write_edge_list(again, back);
        CHECK(again.str() == out.str());
    }
}

TEST_CASE("graph construction invariants") {
    const auto g = make_graph(4, 2, {{0, 0, 1}, {0, 1, 0}, {0, 2, 2}, {1, 3, 1}, {1, 1, 3}});
    CHECK(g.num_edges(0) == 1);
    CHECK(g.num_edges(1) == 1);
    check_undirected_invariants(g);
    std::vector<Edge> bad{{0, 0, 9}};
    CHECK_THROWS_AS(MultilayerGraph::from_edges(4, 1, bad), std::invalid_argument);
    std::vector<Edge> bad_layer{{3, 0, 1}};
    CHECK_THROWS_AS(MultilayerGraph::from_edges(4, 1, bad_layer), std::invalid_argument);
}

TEST_CASE("degree matrix: handshake identity and singleton") {
    std::mt19937_64 rng(3);
    const auto g = random_graph(rng, 10, 3, 0.5);
    const auto dm = degree_matrix(g, NodeSet::all(g.num_nodes()));
    for (LayerId l = 0; l < g.num_layers(); ++l) CHECK(dm.layer_total(l) == 2 * g.num_edges(l));
    const auto single = degree_matrix(g, NodeSet({4}));
    for (LayerId l = 0; l < g.num_layers(); ++l) CHECK(single.at(4, l) == 0);
    CHECK_THROWS_AS(degree_matrix(g, NodeSet({10})), std::out_of_range);
}

TEST_CASE("degree matrix: matches per-edge recount") {
    std::mt19937_64 rng(5);
    std::bernoulli_distribution half(0.5);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = random_graph(rng, 8, 2, 0.5);
        std::vector<bool> in(8);
        for (std::size_t v = 0; v < 8; ++v) in[v] = half(rng);
        const NodeSet s = NodeSet::from_mask(in);
        std::vector<std::vector<std::uint32_t>> want(8, std::vector<std::uint32_t>(2, 0));
        for (const Edge& e : g.edges()) {
            if (in[e.src] && in[e.dst]) {
                ++want[e.src][e.layer];
                ++want[e.dst][e.layer];
            }
        }
        const auto dm = degree_matrix(g, s);
        for (NodeId v = 0; v < 8; ++v) {
            for (LayerId l = 0; l < 2; ++l) CHECK(dm.at(v, l) == want[v][l]);
        }
    }
}

TEST_CASE("directed degree matrices count across sides") {
    std::mt19937_64 rng(9);
    const auto g = random_digraph(rng, 8, 2, 0.4);
    const NodeSet all = NodeSet::all(8);
    const auto out = out_degree_matrix(g, all, all);
    const auto in = in_degree_matrix(g, all, all);
    for (LayerId l = 0; l < 2; ++l) {
        CHECK(out.layer_total(l) == g.num_edges(l));
        CHECK(in.layer_total(l) == g.num_edges(l));
    }
    const NodeSet s({0, 1, 2}), t({2, 3, 4, 5});
    const auto so = out_degree_matrix(g, s, t);
    const auto ti = in_degree_matrix(g, s, t);
    std::size_t arcs = 0;
    for (const Edge& e : g.edges()) {
        if (e.layer == 0 && s.contains(e.src) && t.contains(e.dst)) ++arcs;
    }
    CHECK(so.layer_total(0) == arcs);
    CHECK(ti.layer_total(0) == arcs);
}

TEST_CASE("select layers keeps nodes and reorders layers") {
    const auto g = make_graph(3, 3, {{0, 0, 1}, {2, 1, 2}, {2, 0, 2}});
    const std::vector<LayerId> pick{2, 0};
    const auto sub = select_layers(g, pick);
    CHECK(sub.num_nodes() == 3);
    CHECK(sub.num_layers() == 2);
    CHECK(sub.num_edges(0) == 2);
    CHECK(sub.num_edges(1) == 1);
    CHECK(sub.layer_label(0) == g.layer_label(2));
}

TEST_CASE("synthetic generator") {
    CHECK(generate_synthetic(30, 3, UniformRandom{0.0}, 1).num_edges() == 0);
    CHECK(generate_synthetic(4, 2, UniformRandom{1.0}, 1).num_edges() == 12);
    CHECK(generate_synthetic_directed(4, 2, 1.0, 1).num_edges() == 24);
    const auto a = generate_synthetic(200, 3, UniformRandom{0.05}, 42).edges();
    const auto b = generate_synthetic(200, 3, UniformRandom{0.05}, 42).edges();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].layer == b[i].layer);
        CHECK(a[i].src == b[i].src);
        CHECK(a[i].dst == b[i].dst);
    }
    CHECK_THROWS_AS(generate_synthetic(10, 1, UniformRandom{1.5}, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_synthetic(10, 1, PlantedDense{11, 0.5, 0.1}, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_synthetic_directed(10, 1, -0.1, 1), std::invalid_argument);

    // The planted block is complete when p_in = 1.
    const auto planted = generate_synthetic(50, 2, PlantedDense{6, 1.0, 0.0}, 3);
    CHECK(planted.num_edges() == 2 * 15);
    for (const Edge& e : planted.edges()) CHECK(e.dst < 6);

    // Edge counts stay near their expectation.
    const auto big = generate_synthetic(2000, 1, UniformRandom{0.01}, 5);
    const double expect = 0.01 * 2000.0 * 1999.0 / 2.0;
    CHECK(std::abs(static_cast<double>(big.num_edges()) - expect) < 5.0 * std::sqrt(expect));
}

TEST_CASE("bucket queue is FIFO per bucket") {
    BucketQueue q(6, 4);
    q.push(0, 1);
    q.push(1, 1);
    q.push(2, 3);
    q.push(3, 1);
    q.move(1, 2);
    q.remove(3);
    CHECK(q.bucket_of(0) == 1);
    CHECK_FALSE(q.contains(3));
    CHECK(q.pop(1) == NodeId{0});
    CHECK(q.empty(1));
    CHECK(q.pop(1) == std::nullopt);
    CHECK(q.pop(2) == NodeId{1});
    q.push(4, 3);
    CHECK(q.pop(3) == NodeId{2});
    CHECK(q.pop(3) == NodeId{4});
}
