#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

std::string g_cli;
std::filesystem::path g_dir;
int g_counter = 0;

std::string path_of(const std::string& name) { return (g_dir / name).string(); }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

int run(const std::string& args) {
    const std::string log = path_of("cmd_" + std::to_string(g_counter++) + ".log");
    const std::string cmd = g_cli + " " + args + " >" + log + " 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("generate command") {
    CHECK(run("generate --family grid2d --rows 4 --cols 4 --out " + path_of("grid.txt")) == 0);
    std::istringstream in(slurp(path_of("grid.txt")));
    int n, m;
    in >> n >> m;
    CHECK(n == 16);
    CHECK(m == 24);

    CHECK(run("generate --family path --n 9 --out " + path_of("p9.txt")) == 0);
    std::istringstream p9(slurp(path_of("p9.txt")));
    p9 >> n >> m;
    CHECK(n == 9);
    CHECK(m == 8);

    CHECK(run("generate --family nosuch --n 4 --out " + path_of("x.txt")) == 2);
    CHECK(run("generate --family random_tree --n 5 --out " + path_of("t.txt")) == 2);  // no seed

    CHECK(run("generate --family random_regular --n 16 --degree 3 --seed 7 --out " +
              path_of("reg_a.txt")) == 0);
    CHECK(run("generate --family random_regular --n 16 --degree 3 --seed 7 --out " +
              path_of("reg_b.txt")) == 0);
    CHECK(slurp(path_of("reg_a.txt")) == slurp(path_of("reg_b.txt")));
}

TEST_CASE("decompose command") {
    REQUIRE(run("generate --family path --n 9 --out " + path_of("p9.txt")) == 0);

    CHECK(run("decompose --graph " + path_of("p9.txt") + " --delta 4 --rounds 1 --offsets 2 --out " +
              path_of("dec.json")) == 0);
    auto j = nlohmann::json::parse(slurp(path_of("dec.json")));
    CHECK(j["variant"] == "residue");
    CHECK(j["deleted"][0] == nlohmann::json::array({2, 6}));
    CHECK(j["components"].size() == 3);
    CHECK(j["components"][1]["leader"] == 3);

    // Seeded runs are byte-reproducible.
    std::string base = "decompose --graph " + path_of("p9.txt") + " --delta 4 --rounds 2 --seed 11";
    CHECK(run(base + " --out " + path_of("dec_a.json")) == 0);
    CHECK(run(base + " --out " + path_of("dec_b.json")) == 0);
    CHECK(slurp(path_of("dec_a.json")) == slurp(path_of("dec_b.json")));

    // Annulus needs s and t.
    CHECK(run("decompose --graph " + path_of("p9.txt") +
              " --variant annulus --rounds 1 --out " + path_of("ann.json")) == 2);
    CHECK(run("decompose --graph " + path_of("p9.txt") +
              " --variant annulus --rounds 1 --s 1 --t 2 --out " + path_of("ann.json")) == 0);
    auto ja = nlohmann::json::parse(slurp(path_of("ann.json")));
    CHECK(ja["variant"] == "annulus");
    CHECK(ja["delta"] == 4);
}

TEST_CASE("embed command") {
    REQUIRE(run("generate --family path --n 9 --out " + path_of("p9.txt")) == 0);
    std::string base = "embed --graph " + path_of("p9.txt") +
                       " --rounds 3 --samples 64 --seed 42 --out-prefix " + path_of("emb");
    CHECK(run(base) == 0);
    auto report = nlohmann::json::parse(slurp(path_of("emb.json")));
    CHECK(report["i_max"] == 4);
    for (const auto& sc : report["scales"]) {
        CHECK(sc.contains("epsilon_hat"));
        CHECK(sc["epsilon_hat"].is_number());
    }

    // Base-vertex rows are identically zero in the dump.
    std::istringstream dump(slurp(path_of("emb.csv")));
    std::string line;
    std::getline(dump, line);
    CHECK(line == "vertex,scale,sample,value");
    while (std::getline(dump, line)) {
        if (line.rfind("0,", 0) == 0) CHECK(line.substr(line.rfind(',') + 1) == "0");
    }

    CHECK(run("embed --graph " + path_of("p9.txt") +
              " --rounds 3 --samples 64 --seed 42 --out-prefix " + path_of("emb2")) == 0);
    CHECK(slurp(path_of("emb.csv")) == slurp(path_of("emb2.csv")));
    CHECK(slurp(path_of("emb.json")) == slurp(path_of("emb2.json")));

    CHECK(run("embed --graph " + path_of("p9.txt") + " --rounds 3 --out-prefix " +
              path_of("emb3")) == 2);  // seed is mandatory
}

TEST_CASE("verify command and fault injection") {
    REQUIRE(run("generate --family grid2d --rows 4 --cols 4 --out " + path_of("g44.txt")) == 0);
    // Scale 2 only: every coordinate provably stays within delta/2.
    REQUIRE(run("embed --graph " + path_of("g44.txt") +
                " --rounds 5 --imax 1 --samples 128 --seed 42 --out-prefix " + path_of("ge")) == 0);
    CHECK(run("verify --graph " + path_of("g44.txt") + " --dump " + path_of("ge.csv") +
              " --report " + path_of("ge.json") + " --out " + path_of("profile.json") + " --csv " +
              path_of("profile.csv")) == 0);
    auto prof = nlohmann::json::parse(slurp(path_of("profile.json")));
    CHECK(prof["ok"] == true);
    CHECK(prof["checks"]["lipschitz_violations"] == 0);
    CHECK(slurp(path_of("profile.csv")).rfind("t,rho1,rho2\n", 0) == 0);

    // Inflate one coordinate; verification must fail with exit 1.
    std::string dump = slurp(path_of("ge.csv"));
    size_t cut = dump.find_last_of(',');
    std::string corrupted = dump.substr(0, cut + 1) + "99\n";
    spit(path_of("bad.csv"), corrupted);
    CHECK(run("verify --graph " + path_of("g44.txt") + " --dump " + path_of("bad.csv") +
              " --report " + path_of("ge.json") + " --out " + path_of("bad_profile.json")) == 1);

    // An empty dump is a usage error.
    spit(path_of("empty.csv"), "");
    CHECK(run("verify --graph " + path_of("g44.txt") + " --dump " + path_of("empty.csv") +
              " --report " + path_of("ge.json") + " --out " + path_of("e.json")) == 2);
}

TEST_CASE("certify command") {
    spit(path_of("star.txt"), "5 4\n0 1\n0 2\n0 3\n0 4\n");
    spit(path_of("uniform5.json"), "{\"weights\":[0.2,0.2,0.2,0.2,0.2]}\n");

    std::string base = "certify --graph " + path_of("star.txt") + " --measure " +
                       path_of("uniform5.json") + " --s 1 --T 2 --strategy exhaustive";
    CHECK(run(base + " --phi 0.2 --out " + path_of("cert.json")) == 0);
    auto cert = nlohmann::json::parse(slurp(path_of("cert.json")));
    CHECK(cert["type"] == "certificate");
    CHECK(cert["scope"] == "exhaustive");
    CHECK(cert["self_check"] == true);

    CHECK(run(base + " --phi 1.0 --out " + path_of("trace.json")) == 0);
    auto tr = nlohmann::json::parse(slurp(path_of("trace.json")));
    CHECK(tr["type"] == "trace");
    CHECK(tr["steps"].size() == 3);

    CHECK(run(base + " --phi 0.2 --out " + path_of("c2.json")) == 0);
    CHECK(slurp(path_of("cert.json")) == slurp(path_of("c2.json")));

    CHECK(run("certify --graph " + path_of("star.txt") + " --measure " + path_of("missing.json") +
              " --s 1 --T 2 --phi 0.2 --out " + path_of("x.json")) == 2);
    CHECK(run(base + " --phi 0.2 --D 1.0 --out " + path_of("x.json")) == 2);
}

TEST_CASE("output directory override and json format") {
    std::filesystem::create_directories(g_dir / "redirect");
    const std::string cmd = "env COARSE_OUT_DIR=" + (g_dir / "redirect").string() + " " + g_cli +
                            " generate --family path --n 5 --json --out sub.json >" +
                            path_of("redir.log") + " 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    CHECK(WEXITSTATUS(status) == 0);
    auto j = nlohmann::json::parse(slurp((g_dir / "redirect" / "sub.json").string()));
    CHECK(j["n"] == 5);
    CHECK(j["edges"].size() == 4);
}

TEST_CASE("keep-leader convention flag") {
    REQUIRE(run("generate --family path --n 9 --out " + path_of("p9.txt")) == 0);
    std::string base = "decompose --graph " + path_of("p9.txt") + " --delta 4 --rounds 1 --offsets 4";
    CHECK(run(base + " --out " + path_of("lit.json")) == 0);
    CHECK(run(base + " --keep-leader --out " + path_of("kept.json")) == 0);
    auto lit = nlohmann::json::parse(slurp(path_of("lit.json")));
    auto kept = nlohmann::json::parse(slurp(path_of("kept.json")));
    CHECK(lit["deleted"][0] == nlohmann::json::array({0, 4, 8}));
    CHECK(kept["deleted"][0] == nlohmann::json::array({4, 8}));
}

TEST_CASE("params command") {
    CHECK(run("params --D 1 --r 2 --out " + path_of("params.json")) == 0);
    auto j = nlohmann::json::parse(slurp(path_of("params.json")));
    CHECK(j["s"] == 9);
    CHECK(j["vv_holds"] == true);
    CHECK(j["vvv_holds"] == true);
    CHECK(2 * j["n"].get<long long>() > j["s"].get<long long>());

    CHECK(run("params --D 1 --r 2 --out " + path_of("params_b.json")) == 0);
    CHECK(slurp(path_of("params.json")) == slurp(path_of("params_b.json")));

    CHECK(run("params --D 0 --r 2 --out " + path_of("bad.json")) == 2);
    CHECK(run("params --D 1 --r 1 --out " + path_of("bad.json")) == 2);
}

int main(int argc, char** argv) {
    const char* cli = std::getenv("COARSE_CLI");
    if (!cli || !*cli) {
        std::fprintf(stderr, "COARSE_CLI must point at the coarse binary\n");
        return 1;
    }
    g_cli = cli;
    g_dir = std::filesystem::temp_directory_path() /
            ("coarse_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(g_dir);
    doctest::Context ctx(argc, argv);
    const int rc = ctx.run();
    std::filesystem::remove_all(g_dir);
    return rc;
}
