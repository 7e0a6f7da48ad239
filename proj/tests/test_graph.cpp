#include <doctest.h>

#include <algorithm>
#include <set>

#include "coarse/graph.hpp"
#include "coarse/measure.hpp"
#include "coarse/metric.hpp"
#include "coarse/rng.hpp"

using namespace coarse;

namespace {

Graph path9() { return generate({.family = Family::path, .n = 9}); }

// Independent all-pairs oracle (Floyd-Warshall), used to cross-check the BFS
// metric.
std::vector<std::vector<int>> floyd_warshall(const Graph& g) {
    const int inf = 1 << 28;
    std::vector<std::vector<int>> d(g.n, std::vector<int>(g.n, inf));
    for (int v = 0; v < g.n; ++v) d[v][v] = 0;
    for (auto [u, v] : g.edges) d[u][v] = d[v][u] = 1;
    for (int k = 0; k < g.n; ++k)
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

// Treewidth <= 2 test by series-parallel reduction: repeatedly remove
// degree <= 1 vertices and contract degree-2 vertices (merging parallel
// edges). Exactly the graphs with no K4 minor reduce to nothing.
bool k4_minor_free(const Graph& g) {
    std::vector<std::set<int>> adj(g.n);
    for (auto [u, v] : g.edges) {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    std::vector<char> gone(g.n, 0);
    int remaining = g.n;
    for (;;) {
        int pick = -1;
        for (int v = 0; v < g.n && pick < 0; ++v)
            if (!gone[v] && adj[v].size() <= 2) pick = v;
        if (pick < 0) return remaining == 0;
        if (adj[pick].size() == 2) {
            int a = *adj[pick].begin();
            int b = *std::next(adj[pick].begin());
            adj[a].insert(b);
            adj[b].insert(a);
        }
        for (int w : adj[pick]) adj[w].erase(pick);
        adj[pick].clear();
        gone[pick] = 1;
        --remaining;
    }
}

}  // namespace

TEST_CASE("path family") {
    Graph g = path9();
    CHECK(g.n == 9);
    CHECK(g.m() == 8);
    auto d = bfs_distances(g, 0);
    for (int v = 0; v < 9; ++v) CHECK(d[v] == v);
    CHECK(*g.minor_order == 3);
}

TEST_CASE("cycle distances") {
    Graph c8 = generate({.family = Family::cycle, .n = 8});
    auto d = bfs_distances(c8, 0);
    CHECK(*std::max_element(d.begin(), d.end()) == 4);
    CHECK(*c8.minor_order == 4);
}

TEST_CASE("grid 4x4 against all-pairs oracle") {
    Graph g = generate({.family = Family::grid2d, .rows = 4, .cols = 4});
    CHECK(g.n == 16);
    CHECK(g.m() == 24);
    auto fw = floyd_warshall(g);
    MetricSpace m = metric_of(g);
    for (int u = 0; u < g.n; ++u)
        for (int v = 0; v < g.n; ++v) CHECK(m.dist(u, v) == fw[u][v]);
    CHECK(m.dist(0, 15) == 6);
    CHECK(m.diameter() == 6);
}

TEST_CASE("hypercube") {
    Graph q3 = generate({.family = Family::hypercube, .dim = 3});
    CHECK(q3.n == 8);
    CHECK(q3.m() == 12);
    CHECK(metric_of(q3).diameter() == 3);
}

TEST_CASE("random tree") {
    Graph t = generate({.family = Family::random_tree, .n = 200, .seed = 1});
    CHECK(t.n == 200);
    CHECK(t.m() == 199);
    CHECK(is_connected(t));
    CHECK(k4_minor_free(t));
}

TEST_CASE("series-parallel generator is K4-minor-free") {
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        Graph g = generate({.family = Family::series_parallel, .n = 60, .seed = seed});
        CHECK(g.n == 60);
        CHECK(is_connected(g));
        CHECK(k4_minor_free(g));
    }
    // Negative control for the reduction oracle itself.
    Graph grid = generate({.family = Family::grid2d, .rows = 3, .cols = 3});
    CHECK_FALSE(k4_minor_free(grid));
}

TEST_CASE("random regular degree audit") {
    Graph g = generate({.family = Family::random_regular, .n = 16, .degree = 3, .seed = 7});
    CHECK(g.n == 16);
    for (int v = 0; v < g.n; ++v) CHECK(g.degree(v) == 3);
    CHECK(is_connected(g));
    CHECK_THROWS(generate({.family = Family::random_regular, .n = 15, .degree = 3, .seed = 1}));
}

TEST_CASE("generate is reproducible") {
    FamilySpec spec{.family = Family::random_regular, .n = 32, .degree = 3, .seed = 99};
    Graph a = generate(spec), b = generate(spec);
    CHECK(a.edges == b.edges);
    FamilySpec tree{.family = Family::random_tree, .n = 50, .seed = 5};
    CHECK(generate(tree).edges == generate(tree).edges);
}

TEST_CASE("metric invariants") {
    for (FamilySpec spec : {FamilySpec{.family = Family::path, .n = 9},
                            FamilySpec{.family = Family::grid2d, .rows = 4, .cols = 4},
                            FamilySpec{.family = Family::random_tree, .n = 40, .seed = 3}}) {
        MetricSpace m = metric_of(generate(spec));
        CHECK_NOTHROW(validate_metric(m));
    }
    // Sampled validation path for instances above the exhaustive cutoff.
    MetricSpace big = metric_of(generate({.family = Family::random_tree, .n = 200, .seed = 1}));
    CHECK_NOTHROW(validate_metric(big));

    Graph k4 = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    MetricSpace mk = metric_of(k4);
    for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v) CHECK(mk.dist(u, v) == (u == v ? 0 : 1));

    Graph disconnected = Graph::from_edges(3, {{0, 1}});
    CHECK_THROWS(metric_of(disconnected));
}

TEST_CASE("proximity graph") {
    MetricSpace m = metric_of(path9());

    SUBCASE("s = 1 reproduces the edge set") {
        Graph h = proximity_graph(m, 1);
        CHECK(h.edges == path9().edges);
    }
    SUBCASE("s >= diameter is complete") {
        Graph h = proximity_graph(m, 8);
        CHECK(h.m() == 9 * 8 / 2);
    }
    SUBCASE("points {0,3,7} at s = 3 give a single edge") {
        MetricSpace sub = restrict_metric(m, {0, 3, 7});
        CHECK(sub.dist(0, 1) == 3);
        CHECK(sub.dist(1, 2) == 4);
        CHECK(sub.dist(0, 2) == 7);
        Graph h = proximity_graph(sub, 3);
        CHECK(h.edges == std::vector<Edge>{{0, 1}});
    }
    SUBCASE("s = 0 rejected") { CHECK_THROWS(proximity_graph(m, 0)); }
}

TEST_CASE("vertex boundary") {
    Graph g = path9();
    CHECK(vertex_boundary(g, {3, 4, 5}) == std::vector<int>{2, 6});
    std::vector<int> all(9);
    for (int i = 0; i < 9; ++i) all[i] = i;
    CHECK(vertex_boundary(g, all).empty());
    CHECK(vertex_boundary(g, {}).empty());

    // Boundary never meets the set, and every member touches it.
    Rng rng(11);
    Graph grid = generate({.family = Family::grid2d, .rows = 5, .cols = 5});
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> a;
        for (int v = 0; v < grid.n; ++v)
            if (rng.coin()) a.push_back(v);
        auto bd = vertex_boundary(grid, a);
        std::set<int> in_a(a.begin(), a.end());
        for (int v : bd) {
            CHECK(in_a.count(v) == 0);
            bool touches = false;
            for (int w : grid.adj[v]) touches |= in_a.count(w) > 0;
            CHECK(touches);
        }
    }
}

TEST_CASE("far pair measure") {
    MetricSpace m = metric_of(path9());

    PairMeasure mu = far_pair_measure(m, 8);
    REQUIRE(mu.support.size() == 2);
    CHECK(mu.support[0].u == 0);
    CHECK(mu.support[0].v == 8);
    CHECK(mu.support[1].u == 8);
    CHECK(mu.support[1].v == 0);
    CHECK(mu.support[0].w == doctest::Approx(0.5));
    CHECK_NOTHROW(mu.validate(m));

    CHECK(far_pair_measure(m, 1).support.size() == 72);
    CHECK_THROWS(far_pair_measure(m, 9));

    double sum = 0;
    for (const auto& e : far_pair_measure(m, 4).support) {
        CHECK(m.dist(e.u, e.v) >= 4);
        sum += e.w;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("measure restriction") {
    VertexMeasure nu = VertexMeasure::uniform(9);
    CHECK(measure_restrict(nu, {2, 6}) == doctest::Approx(2.0 / 9));
    CHECK(measure_restrict(nu, {}) == 0.0);
    std::vector<int> all(9);
    for (int i = 0; i < 9; ++i) all[i] = i;
    CHECK(measure_restrict(nu, all) == doctest::Approx(nu.total));

    PairMeasure mu = far_pair_measure(metric_of(path9()), 8);
    VertexMeasure marg = mu.marginal(9);
    CHECK(marg.weights[0] == doctest::Approx(0.5));
    CHECK(marg.weights[8] == doctest::Approx(0.5));
    CHECK(marg.total == doctest::Approx(1.0));
}

TEST_CASE("graph validation") {
    CHECK_THROWS(Graph::from_edges(2, {{0, 0}}));
    CHECK_THROWS(Graph::from_edges(2, {{0, 1}, {1, 0}}));
    CHECK_THROWS(Graph::from_edges(2, {{0, 2}}));
    CHECK_THROWS(Graph::from_edges(0, {}));
}
