#include <doctest.h>

#include <cmath>
#include <random>

#include "firmcore/density.hpp"
#include "firmcore/oracle.hpp"
#include "firmcore/synthetic.hpp"
#include "support.hpp"

using namespace firmcore;
using firmcore::testing::at_least;
using firmcore::testing::make_digraph;
using firmcore::testing::make_graph;
using firmcore::testing::random_digraph;
using firmcore::testing::random_graph;
using firmcore::testing::random_small_digraph;
using firmcore::testing::random_small_graph;

namespace {

MultilayerGraph clique_graph(std::size_t n, std::size_t extra_nodes, std::size_t layers, LayerId layer) {
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) edges.push_back({layer, u, v});
    }
    return MultilayerGraph::from_edges(n + extra_nodes, layers, edges);
}

std::vector<std::uint64_t> induced_edges(const MultilayerGraph& g, const NodeSet& s) {
    std::vector<std::uint64_t> count(g.num_layers(), 0);
    for (const Edge& e : g.edges()) count[e.layer] += s.contains(e.src) && s.contains(e.dst);
    return count;
}

std::vector<std::uint64_t> cross_arcs(const DirectedMultilayerGraph& g, const NodeSet& s, const NodeSet& t) {
    std::vector<std::uint64_t> count(g.num_layers(), 0);
    for (const Edge& e : g.edges()) count[e.layer] += s.contains(e.src) && t.contains(e.dst);
    return count;
}

// Independent xi scan, written out by hand for the formula tests.
double psi_scan(std::size_t lambda_plus, double beta) {
    double best = 0.0;
    for (std::size_t xi = 0; xi < lambda_plus; ++xi) {
        best = std::max(best, static_cast<double>(lambda_plus - xi) * std::pow(static_cast<double>(xi + 1), beta));
    }
    return best;
}

}  // namespace

TEST_CASE("best layer subset") {
    const std::vector<double> d{3.0, 2.0, 1.0};
    const auto sel = best_layer_subset(d, 1.0);
    CHECK(sel.rho == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(sel.layers == std::vector<LayerId>{0, 1});
    const std::vector<double> single{2.5};
    CHECK(best_layer_subset(single, 3.0).rho == 2.5);
    // Equal densities: the smallest prefix wins a tie.
    const std::vector<double> flat{1.0, 0.0, 1.0};
    const auto tied = best_layer_subset(flat, 1.0);
    CHECK(tied.rho == 2.0);
    CHECK(tied.layers == std::vector<LayerId>{0, 2});
}

TEST_CASE("rho: single layer equals its density") {
    const auto g = clique_graph(5, 1, 1, 0);
    const auto rep = rho_undirected(g, NodeSet({0, 1, 2, 3, 4}), 1.7);
    CHECK(rep.rho == 2.0);
    CHECK(rep.per_layer_density == std::vector<double>{2.0});
    CHECK_THROWS_AS(rho_undirected(g, NodeSet(), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(rho_undirected(g, NodeSet({0}), 0.0), std::invalid_argument);
}

TEST_CASE("rho matches layer subset enumeration") {
    std::mt19937_64 rng(61);
    std::bernoulli_distribution half(0.6);
    for (int trial = 0; trial < 60; ++trial) {
        const auto g = random_graph(rng, 8, 3, 0.5);
        std::vector<bool> mask(8);
        for (std::size_t v = 0; v < 8; ++v) mask[v] = half(rng);
        mask[trial % 8] = true;
        const NodeSet s = NodeSet::from_mask(mask);
        for (double beta : {0.5, 1.0, 2.0}) {
            const double want = oracle::rho_by_enumeration(induced_edges(g, s), static_cast<double>(s.size()), beta);
            CHECK(rho_undirected(g, s, beta).rho == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("directed rho") {
    // Symmetric single layer with S = T: |E(S, S)| / |S|.
    const auto sym = make_digraph(3, 1, {{0, 0, 1}, {0, 1, 0}, {0, 1, 2}, {0, 2, 1}});
    const NodeSet all({0, 1, 2});
    CHECK(rho_directed(sym, all, all, 1.0).rho == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    const auto one = make_digraph(2, 1, {{0, 0, 1}});
    for (double beta : {0.5, 1.0, 3.0}) CHECK(rho_directed(one, NodeSet({0}), NodeSet({1}), beta).rho == 1.0);

    std::mt19937_64 rng(67);
    std::bernoulli_distribution coin(0.5);
    for (int trial = 0; trial < 40; ++trial) {
        const auto g = random_digraph(rng, 6, 3, 0.4);
        std::vector<bool> sm(6), tm(6);
        for (std::size_t v = 0; v < 6; ++v) {
            sm[v] = coin(rng);
            tm[v] = coin(rng);
        }
        sm[0] = tm[5] = true;
        const NodeSet s = NodeSet::from_mask(sm), t = NodeSet::from_mask(tm);
        for (double beta : {0.5, 2.0}) {
            const double norm = std::sqrt(static_cast<double>(s.size() * t.size()));
            const double want = oracle::rho_by_enumeration(cross_arcs(g, s, t), norm, beta);
            CHECK(rho_directed(g, s, t, beta).rho == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("psi and the approximation factor") {
    CHECK(psi_beta(2, 1.0) == 2.0);
    CHECK(psi_beta(2, 2.0) == 4.0);
    CHECK(psi_beta(2, 3.0) == 8.0);
    CHECK(approx_factor(3, 2, 1.0) == 1.0 / 9.0);
    CHECK(approx_factor(3, 2, 2.0) == 2.0 / 27.0);
    CHECK(approx_factor(3, 2, 3.0) == 4.0 / 81.0);
    for (std::size_t lp = 1; lp <= 10; ++lp) {
        for (double beta : {0.5, 1.0, 2.0, 3.0}) {
            const double psi = psi_beta(lp, beta);
            CHECK(psi == psi_scan(lp, beta));
            CHECK(psi >= std::pow(static_cast<double>(lp), beta));
            CHECK(psi >= static_cast<double>(lp));
        }
    }
    const auto diag = approx_diagnostics(3, 2, 2.0);
    CHECK(diag.psi_beta == 4.0);
    CHECK(diag.guaranteed_factor == 2.0 / 27.0);
    CHECK_THROWS_AS(psi_beta(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(psi_beta(2, -1.0), std::invalid_argument);
}

TEST_CASE("lemma bound formulas") {
    CHECK(lemma1_bound(0, 2, 3, 1.0) == 0.0);
    CHECK(lemma1_bound(4, 2, 3, 1.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(lemma1_bound(4, 2, 3, 1.0) == doctest::Approx(4.0 / 6.0 * psi_scan(2, 1.0)).epsilon(1e-15));
    CHECK(lemma4_bound(2, 8, 1, 1, 1.0, 4, 1) == doctest::Approx(4.0).epsilon(1e-15));
    for (double beta : {0.5, 2.0}) {
        CHECK(lemma4_bound(3, 3, 2, 4, beta, 5, 5) == doctest::Approx(psi_scan(2, beta) * 3.0 / 4.0).epsilon(1e-15));
    }
}

TEST_CASE("core density lower bound holds on every firmcore") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = random_small_graph(rng, 12, 4);
        const auto table = firmcore_decomposition(g);
        for (double beta : {0.5, 1.0, 2.0, 3.0}) {
            for (std::size_t lambda = 1; lambda <= g.num_layers(); ++lambda) {
                for (std::uint32_t k = 1; k <= table.max_core(lambda); ++k) {
                    const NodeSet core = extract_firmcore(table, k, lambda);
                    const double rho = rho_undirected(g, core, beta).rho;
                    CHECK(at_least(rho, lemma1_bound(k, lambda, g.num_layers(), beta)));
                }
            }
        }
    }
}

TEST_CASE("core density lower bound holds on every firmd-core") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = random_small_digraph(rng, 8, 3);
        const auto table = full_firmdcore(g);
        for (double beta : {0.5, 1.0, 2.0, 3.0}) {
            for (std::size_t lambda = 1; lambda <= g.num_layers(); ++lambda) {
                for (std::uint32_t k = 1; k <= table.k_max(lambda); ++k) {
                    for (std::uint32_t r = 1; r <= 8; ++r) {
                        const auto core = extract_firmdcore(table, k, r, lambda);
                        if (core.s.empty() || core.t.empty()) continue;
                        const double rho = rho_directed(g, core.s, core.t, beta).rho;
                        const double bound =
                            lemma4_bound(k, r, lambda, g.num_layers(), beta, core.s.size(), core.t.size());
                        CHECK(at_least(rho, bound));
                    }
                }
            }
        }
    }
}

TEST_CASE("fc_approx on a lone clique") {
    const auto g = clique_graph(5, 3, 1, 0);
    const auto rep = fc_approx(g, 1.0);
    CHECK(rep.nodes == NodeSet({0, 1, 2, 3, 4}));
    CHECK(rep.rho == 2.0);
    REQUIRE(rep.source_core.has_value());
    CHECK(rep.source_core->k == 4);
    CHECK(rep.source_core->lambda == 1);
    CHECK(fc_approx(g, 1.0, 4).nodes == rep.nodes);
}

TEST_CASE("fc_approx without edges") {
    const auto g = MultilayerGraph::from_edges(4, 2, {});
    const auto rep = fc_approx(g, 1.0);
    CHECK(rep.rho == 0.0);
    CHECK(rep.nodes == NodeSet::all(4));
    CHECK_FALSE(rep.source_core.has_value());
}

TEST_CASE("fc_approx meets its guarantee against exhaustive search") {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 25; ++trial) {
        const auto g = random_small_graph(rng, 10, 3);
        if (g.num_edges() == 0) continue;
        const std::size_t lp = oracle::exact_lambda_plus(g);
        REQUIRE(lp >= 1);
        for (double beta : {0.5, 1.0, 2.0}) {
            const auto best = oracle::exhaustive_densest(g, beta);
            const auto rep = fc_approx(g, beta);
            CHECK(at_least(rep.rho, approx_factor(g.num_layers(), lp, beta) * best.rho));
            CHECK(at_least(best.rho, rep.rho));
            CHECK(rep.rho == rho_undirected(g, rep.nodes, beta).rho);
        }
    }
}

TEST_CASE("fc_approx recovers a planted dense block") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto g = generate_synthetic(200, 3, PlantedDense{20, 0.9, 0.02}, seed);
        const auto rep = fc_approx(g, 1.0);
        std::size_t hit = 0;
        for (NodeId v = 0; v < 20; ++v) hit += rep.nodes.contains(v);
        CHECK(hit >= 16);
    }
}

TEST_CASE("fdc_approx on a complete bipartite block") {
    const auto g = make_digraph(6, 1, {{0, 0, 2}, {0, 0, 3}, {0, 0, 4}, {0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
    const auto rep = fdc_approx(g, 1.0);
    CHECK(rep.s == NodeSet({0, 1}));
    CHECK(rep.t == NodeSet({2, 3, 4}));
    CHECK(rep.rho == doctest::Approx(6.0 / std::sqrt(6.0)).epsilon(1e-15));
    REQUIRE(rep.source_core.has_value());
    CHECK(rep.source_core->r.has_value());
}

TEST_CASE("fdc_approx never picks lambda = |L| beside an edgeless layer") {
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 10; ++trial) {
        const auto base = random_digraph(rng, 8, 2, 0.4);
        std::vector<Edge> edges = base.edges();
        const auto g = DirectedMultilayerGraph::from_edges(8, 3, edges);
        if (g.num_edges() == 0) continue;
        const auto rep = fdc_approx(g, 1.0);
        REQUIRE(rep.source_core.has_value());
        CHECK(rep.source_core->lambda < 3);
    }
}

TEST_CASE("fdc_approx meets its guarantee against exhaustive search") {
    std::mt19937_64 rng(89);
    for (int trial = 0; trial < 15; ++trial) {
        const auto g = random_small_digraph(rng, 6, 2);
        if (g.num_edges() == 0) continue;
        const std::size_t lh = oracle::exact_lambda_hat(g);
        REQUIRE(lh >= 1);
        for (double beta : {0.5, 1.0, 2.0}) {
            const auto best = oracle::exhaustive_densest(g, beta);
            const auto rep = fdc_approx(g, beta);
            CHECK(at_least(rep.rho, approx_factor(g.num_layers(), lh, beta) * best.rho));
            CHECK(at_least(best.rho, rep.rho));
        }
        CHECK(fdc_approx(g, 1.0, 3).rho == fdc_approx(g, 1.0, 1).rho);
    }
}

TEST_CASE("bff_mm") {
    const auto single = clique_graph(4, 2, 1, 0);
    const auto res = bff_mm(single);
    CHECK(res.k_max == 3);
    CHECK(res.nodes == NodeSet({0, 1, 2, 3}));
    CHECK(bff_objective(single, res.nodes) == 3);

    const auto with_empty = clique_graph(4, 0, 2, 0);
    const auto res0 = bff_mm(with_empty);
    CHECK(res0.k_max == 0);
    CHECK(res0.nodes == NodeSet::all(4));

    std::mt19937_64 rng(97);
    for (int trial = 0; trial < 40; ++trial) {
        const auto g = random_small_graph(rng, 10, 3);
        const auto r = bff_mm(g);
        CHECK(bff_objective(g, r.nodes) == r.k_max);
        CHECK(r.k_max == oracle::exhaustive_bff(g));
    }
    CHECK_THROWS_AS(bff_mm(MultilayerGraph::from_edges(0, 1, {})), std::invalid_argument);
}

TEST_CASE("quasi-clique pruning") {
    // All-ones ratio and full support: the (min_size - 1, |L|) core.
    const auto g = make_graph(6, 2,
                              {{0, 0, 1}, {0, 0, 2}, {0, 1, 2}, {1, 0, 1}, {1, 0, 2}, {1, 1, 2}, {0, 3, 4}, {1, 4, 5}});
    const std::vector<double> ones{1.0, 1.0};
    const auto th = quasiclique_thresholds(ones, 1.0, 3, 2);
    CHECK(th.k == 2);
    CHECK(th.lambda == 2);
    CHECK(quasiclique_prune(g, ones, 1.0, 3) == NodeSet({0, 1, 2}));
    CHECK(quasiclique_prune(g, ones, 1.0, 1) == NodeSet::all(6));
    // 0.6 * 5 lands on 3 despite rounding noise.
    const std::vector<double> point6{0.6, 0.6};
    CHECK(quasiclique_thresholds(point6, 0.5, 6, 2).k == 3);
    CHECK(quasiclique_thresholds(point6, 0.5, 6, 2).lambda == 1);
    CHECK_THROWS_AS(quasiclique_prune(g, std::vector<double>{1.0}, 1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(quasiclique_prune(g, ones, 0.0, 3), std::invalid_argument);

    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> ratio(0.3, 1.0);
    std::uniform_int_distribution<std::size_t> size(1, 5);
    for (int trial = 0; trial < 30; ++trial) {
        const auto h = random_small_graph(rng, 10, 3);
        std::vector<double> gamma(h.num_layers());
        for (auto& x : gamma) x = ratio(rng);
        const double min_sup = (trial % 3 + 1) / 3.0;
        const std::size_t min_size = size(rng);
        const NodeSet kept = quasiclique_prune(h, gamma, min_sup, min_size);
        for (const NodeSet& q : oracle::exhaustive_quasicliques(h, gamma, min_sup, min_size)) {
            CHECK(q.is_subset_of(kept));
        }
    }
}
