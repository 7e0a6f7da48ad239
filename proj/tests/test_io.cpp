#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "coarse/io.hpp"

using namespace coarse;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("coarse_io_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
    static inline int counter = 0;
};

}  // namespace

TEST_CASE("graph text and json round trips") {
    for (FamilySpec spec : {FamilySpec{.family = Family::path, .n = 9},
                            FamilySpec{.family = Family::grid2d, .rows = 3, .cols = 5},
                            FamilySpec{.family = Family::random_tree, .n = 30, .seed = 9}}) {
        Graph g = generate(spec);
        TempDir dir;
        write_text_file(dir.file("g.txt"), graph_to_text(g));
        Graph t = read_graph(dir.file("g.txt"));
        CHECK(t.n == g.n);
        CHECK(t.edges == g.edges);

        write_json_file(dir.file("g.json"), graph_to_json(g));
        Graph j = read_graph(dir.file("g.json"));
        CHECK(j.edges == g.edges);
    }
}

TEST_CASE("measure files") {
    TempDir dir;
    Graph g = generate({.family = Family::path, .n = 9});
    MetricSpace m = metric_of(g);

    PairMeasure mu = far_pair_measure(m, 8);
    write_json_file(dir.file("mu.json"), pair_measure_to_json(mu));
    PairMeasure back = read_pair_measure(dir.file("mu.json"));
    CHECK(back.separation == 8);
    REQUIRE(back.support.size() == 2);
    CHECK(back.support[0].u == mu.support[0].u);
    CHECK(back.support[0].w == mu.support[0].w);
    CHECK_NOTHROW(back.validate(m));

    // A pair file also loads as a vertex measure via its marginal.
    VertexMeasure marg = read_vertex_measure(dir.file("mu.json"), 9);
    CHECK(marg.weights[0] == doctest::Approx(0.5));

    VertexMeasure nu = VertexMeasure::uniform(9);
    write_json_file(dir.file("nu.json"), vertex_measure_to_json(nu));
    VertexMeasure nu2 = read_vertex_measure(dir.file("nu.json"), 9);
    CHECK(nu2.weights == nu.weights);
    CHECK_THROWS(read_vertex_measure(dir.file("nu.json"), 5));
}

TEST_CASE("decomposition json shape") {
    Graph g = generate({.family = Family::path, .n = 9});
    Json j = decomposition_to_json(kpr_decompose(g, 4, 2, {2, 1}));
    CHECK(j["delta"] == 4);
    CHECK(j["rounds"] == 2);
    CHECK(j["variant"] == "residue");
    CHECK(j["offsets"] == Json::array({2, 1}));
    CHECK(j["deleted"][0] == Json::array({2, 6}));
    CHECK(j["components"][0]["leader"] == 0);

    VertexMeasure nu = VertexMeasure::uniform(9);
    Json a = decomposition_to_json(annulus_decompose(g, nu, 1, 2, 1));
    CHECK(a["variant"] == "annulus");
    CHECK(a["offsets"].size() == 1);
    CHECK(a["offsets"][0].is_array());
}

TEST_CASE("embedding dump round trip") {
    Graph g = generate({.family = Family::path, .n = 9});
    L1Point p = multiscale_embed(g, 2, 3, 32, 42, 0);
    TempDir dir;
    write_text_file(dir.file("dump.csv"), embedding_to_csv(p));
    Json config;
    config["note"] = "test";
    Json report = embed_report(p, g, config);
    write_json_file(dir.file("report.json"), report);

    L1Point q = read_embedding(dir.file("dump.csv"), read_json_file(dir.file("report.json")));
    CHECK(q.base_vertex == p.base_vertex);
    CHECK(q.rounds == p.rounds);
    CHECK(q.seed == p.seed);
    REQUIRE(q.blocks.size() == p.blocks.size());
    for (size_t i = 0; i < p.blocks.size(); ++i) {
        CHECK(q.blocks[i].delta == p.blocks[i].delta);
        CHECK(q.blocks[i].values == p.blocks[i].values);
        CHECK(q.base_rows[i] == p.base_rows[i]);
    }
    for (int u = 0; u < 9; ++u)
        CHECK(l1_distance(q, 0, u) == l1_distance(p, 0, u));
}

TEST_CASE("profile serialization") {
    Graph g = generate({.family = Family::path, .n = 9});
    DistortionProfile prof = contract_profile(multiscale_embed(g, 2, 3, 64, 42, 0), metric_of(g));
    Json j = profile_to_json(prof);
    CHECK(j["diameter"] == 8);
    CHECK(j["buckets"].size() == 8);
    std::string csv = profile_to_csv(prof);
    CHECK(csv.rfind("t,rho1,rho2\n", 0) == 0);
}
