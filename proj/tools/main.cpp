#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include "coarse/analysis.hpp"
#include "coarse/decompose.hpp"
#include "coarse/embed.hpp"
#include "coarse/graph.hpp"
#include "coarse/io.hpp"
#include "coarse/measure.hpp"
#include "coarse/metric.hpp"

using namespace coarse;

namespace {

// Exit codes: 0 success, 1 invariant violation, 2 usage or input error.
struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// COARSE_OUT_DIR redirects relative output paths; inputs are untouched.
std::string out_path(const std::string& path) {
    const char* dir = std::getenv("COARSE_OUT_DIR");
    if (!dir || !*dir || path.empty() || path.front() == '/') return path;
    return std::string(dir) + "/" + path;
}

struct GenerateArgs {
    std::string family = "path";
    int n = 0, rows = 0, cols = 0, dim = 0, degree = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool as_json = false;
    std::string out;
};

void cmd_generate(const GenerateArgs& a) {
    FamilySpec spec;
    spec.family = family_from_string(a.family);
    spec.n = a.n;
    spec.rows = a.rows;
    spec.cols = a.cols;
    spec.dim = a.dim;
    spec.degree = a.degree;
    spec.seed = a.seed;
    const bool randomized = spec.family == Family::random_tree ||
                            spec.family == Family::series_parallel ||
                            spec.family == Family::random_regular;
    if (randomized && !a.seed_set)
        throw std::invalid_argument("generate: --seed is required for randomized families");
    Graph g = generate(spec);
    if (a.as_json)
        write_json_file(out_path(a.out), graph_to_json(g));
    else
        write_text_file(out_path(a.out), graph_to_text(g));
    std::cout << "wrote " << a.out << " (n=" << g.n << ", m=" << g.m() << ")\n";
}

struct DecomposeArgs {
    std::string graph, out, variant = "residue", measure;
    int delta = 0, rounds = 0, s = 0, t = 0;
    std::vector<int> offsets;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool keep_leader = false;
};

void cmd_decompose(const DecomposeArgs& a) {
    Graph g = read_graph(a.graph);
    Json config{{"command", "decompose"},
                {"graph", a.graph},
                {"variant", a.variant},
                {"rounds", a.rounds},
                {"keep_leader", a.keep_leader}};
    Decomposition dec;
    if (a.variant == "residue") {
        if (a.delta < 1) throw std::invalid_argument("decompose: --delta is required");
        std::vector<int> lambda = a.offsets;
        if (lambda.empty()) {
            if (!a.seed_set) throw std::invalid_argument("decompose: provide --offsets or --seed");
            lambda = draw_lambda(omega_key(a.seed, a.delta, 0), a.delta, a.rounds);
            config["seed"] = a.seed;
        } else {
            config["offsets"] = lambda;
        }
        config["delta"] = a.delta;
        dec = kpr_decompose(g, a.delta, a.rounds, lambda,
                            a.keep_leader ? ZeroResidue::kept : ZeroResidue::deletable);
    } else if (a.variant == "annulus") {
        if (a.s < 1 || a.t < 1)
            throw std::invalid_argument("decompose: annulus variant requires --s and --t");
        VertexMeasure nu =
            a.measure.empty() ? VertexMeasure::uniform(g.n) : read_vertex_measure(a.measure, g.n);
        config["s"] = a.s;
        config["t"] = a.t;
        config["measure"] = a.measure.empty() ? "uniform" : a.measure;
        dec = annulus_decompose(g, nu, a.s, a.t, a.rounds);
    } else {
        throw std::invalid_argument("decompose: unknown variant: " + a.variant);
    }
    validate_decomposition(dec, g);
    Json j = decomposition_to_json(dec);
    j["config"] = config;
    write_json_file(out_path(a.out), j);
    std::cout << "wrote " << a.out << " (" << dec.components.size() << " components)\n";
}

struct EmbedArgs {
    std::string graph, out_prefix;
    int rounds = 0, i_max = 0, samples = 256, base = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void cmd_embed(const EmbedArgs& a) {
    if (!a.seed_set) throw std::invalid_argument("embed: --seed is required");
    Graph g = read_graph(a.graph);
    const int i_max = a.i_max > 0 ? a.i_max : default_i_max(g);
    L1Point p = multiscale_embed(g, a.rounds, i_max, a.samples, a.seed, a.base);

    Json config{{"command", "embed"},     {"graph", a.graph}, {"rounds", a.rounds},
                {"i_max", i_max},         {"samples", a.samples}, {"seed", a.seed},
                {"base_vertex", a.base}};
    write_text_file(out_path(a.out_prefix + ".csv"), embedding_to_csv(p));
    write_json_file(out_path(a.out_prefix + ".json"), embed_report(p, g, config));
    long long violations = 0;
    for (const auto& b : p.blocks) violations += b.magnitude_violations;
    std::cout << "wrote " << a.out_prefix << ".csv and " << a.out_prefix << ".json"
              << " (scales=" << p.blocks.size() << ", magnitude_violations=" << violations << ")\n";
}

struct VerifyArgs {
    std::string graph, dump, report, out, csv;
};

void cmd_verify(const VerifyArgs& a) {
    Graph g = read_graph(a.graph);
    Json report = read_json_file(a.report);
    L1Point p = read_embedding(a.dump, report);
    if (report.at("graph").at("n").get<int>() != g.n)
        throw std::invalid_argument("verify: graph does not match the report");

    long long lipschitz_bad = 0, magnitude_bad = 0, upper_bad = 0;
    bool partition_ok = true, recompute_ok = true;

    for (size_t k = 0; k < p.blocks.size(); ++k) {
        const ScaleBlock& b = p.blocks[k];
        const auto& base = p.base_rows[k];
        lipschitz_bad += count_lipschitz_violations(b, g);
        // Raw magnitudes: undo the centering with the recorded base row.
        for (int v = 0; v < b.n; ++v)
            for (int s = 0; s < b.samples; ++s)
                if (2.0 * std::abs(b.value(v, s) + base[s]) > b.delta) ++magnitude_bad;

        // Deterministic re-run: cuts must partition the graph and reproduce
        // the dumped coordinates exactly.
        ScaleBlock fresh = embed_scale(g, b.delta, p.rounds, b.samples, p.seed);
        for (int s = 0; s < b.samples; ++s) {
            auto lambda = draw_lambda(omega_key(p.seed, b.delta, s), b.delta, p.rounds);
            Decomposition dec = kpr_decompose(g, b.delta, p.rounds, lambda);
            try {
                validate_decomposition(dec, g);
            } catch (const std::exception&) {
                partition_ok = false;
            }
        }
        for (int v = 0; v < b.n; ++v)
            for (int s = 0; s < b.samples; ++s)
                if (fresh.value(v, s) - fresh.value(p.base_vertex, s) != b.value(v, s))
                    recompute_ok = false;
    }

    MetricSpace m = metric_of(g);
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if (l1_distance(p, u, v) > 3.0 * m.dist(u, v)) ++upper_bad;

    DistortionProfile prof = contract_profile(p, m);
    Json out = profile_to_json(prof);
    out["config"] = {{"command", "verify"}, {"graph", a.graph}, {"dump", a.dump},
                     {"report", a.report}};
    out["checks"] = {{"lipschitz_violations", lipschitz_bad},
                     {"magnitude_violations", magnitude_bad},
                     {"upper_bound_violations", upper_bad},
                     {"partition_ok", partition_ok},
                     {"recompute_ok", recompute_ok}};
    const bool ok =
        lipschitz_bad == 0 && magnitude_bad == 0 && upper_bad == 0 && partition_ok && recompute_ok;
    out["ok"] = ok;
    write_json_file(out_path(a.out), out);
    if (!a.csv.empty()) write_text_file(out_path(a.csv), profile_to_csv(prof));
    std::cout << (ok ? "verify: all invariants hold\n" : "verify: INVARIANT VIOLATIONS found\n");
    if (!ok) throw InvariantViolation("embedding failed verification, see " + a.out);
}

struct CertifyArgs {
    std::string graph, measure, out, strategy = "candidate";
    int s = 0;
    double T = 0, phi = 0, d_constant = 0;
    bool phi_set = false, d_set = false;
};

void cmd_certify(const CertifyArgs& a) {
    Graph g = read_graph(a.graph);
    MetricSpace m = metric_of(g);
    VertexMeasure nu = read_vertex_measure(a.measure, g.n);
    if (a.phi_set == a.d_set)
        throw std::invalid_argument("certify: provide exactly one of --phi or --D");
    const double phi = a.phi_set ? a.phi : phi_threshold(a.d_constant, a.s);
    Strategy strat = strategy_from_string(a.strategy);

    Json config{{"command", "certify"}, {"graph", a.graph}, {"measure", a.measure},
                {"s", a.s},             {"T", a.T},         {"phi", phi},
                {"strategy", a.strategy}};

    auto res = exhaust(m, nu, a.s, a.T, phi, strat);
    Json j;
    bool self_check;
    if (std::holds_alternative<ExpansionCertificate>(res)) {
        const auto& cert = std::get<ExpansionCertificate>(res);
        j = certificate_to_json(cert);
        self_check = certificate_check(cert, m, nu, a.s, a.T);
    } else {
        const auto& tr = std::get<ExhaustionTrace>(res);
        j = trace_to_json(tr);
        self_check = check_separation(tr, m, a.s);
    }
    j["config"] = config;
    j["self_check"] = self_check;
    write_json_file(out_path(a.out), j);
    std::cout << "wrote " << a.out << " (" << j["type"].get<std::string>() << ")\n";
    if (!self_check) throw InvariantViolation("certify: self check failed, see " + a.out);
}

struct ParamsArgs {
    double d_constant = 0;
    int r = 0;
    std::string out;
};

void cmd_params(const ParamsArgs& a) {
    CutParameters p = parameter_search(a.d_constant, a.r);
    Json j = params_to_json(p);
    j["config"] = {{"command", "params"}, {"D", a.d_constant}, {"r", a.r}};
    if (!j["vv_holds"].get<bool>() || !j["vvv_holds"].get<bool>())
        throw InvariantViolation("params: re-verification failed");
    if (a.out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        write_json_file(out_path(a.out), j);
        std::cout << "wrote " << a.out << " (s=" << p.s << ", t=" << p.t << ", n=" << p.n << ")\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coarse: graph decompositions, multi-scale L1 embeddings, expansion certificates"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* cg = app.add_subcommand("generate", "Generate a graph family instance");
    cg->add_option("--family", gen.family,
                   "path|cycle|grid2d|random_tree|series_parallel|hypercube|random_regular");
    cg->add_option("--n", gen.n, "vertex count");
    cg->add_option("--rows", gen.rows, "grid rows");
    cg->add_option("--cols", gen.cols, "grid cols");
    cg->add_option("--dim", gen.dim, "hypercube dimension");
    cg->add_option("--degree", gen.degree, "regular degree");
    cg->add_option("--seed", gen.seed, "rng seed")->each([&](const std::string&) {
        gen.seed_set = true;
    });
    cg->add_flag("--json", gen.as_json, "write the JSON graph format");
    cg->add_option("--out", gen.out, "output path")->required();
    cg->callback([&] { cmd_generate(gen); });

    DecomposeArgs dec;
    auto* cd = app.add_subcommand("decompose", "Cut a graph into low-diameter components");
    cd->add_option("--graph", dec.graph)->required();
    cd->add_option("--variant", dec.variant, "residue|annulus");
    cd->add_option("--delta", dec.delta, "scale (residue variant)");
    cd->add_option("--rounds", dec.rounds)->required();
    cd->add_option("--offsets", dec.offsets, "forced per-round offsets")->delimiter(',');
    cd->add_option("--seed", dec.seed)->each([&](const std::string&) { dec.seed_set = true; });
    cd->add_option("--s", dec.s, "annulus half-width parameter");
    cd->add_option("--t", dec.t, "annulus gap parameter");
    cd->add_option("--measure", dec.measure, "vertex measure JSON (annulus variant)");
    cd->add_flag("--keep-leader", dec.keep_leader, "never delete distance-0 vertices");
    cd->add_option("--out", dec.out)->required();
    cd->callback([&] { cmd_decompose(dec); });

    EmbedArgs emb;
    auto* ce = app.add_subcommand("embed", "Multi-scale random-sign embedding");
    ce->add_option("--graph", emb.graph)->required();
    ce->add_option("--rounds", emb.rounds)->required();
    ce->add_option("--imax", emb.i_max, "largest scale index (default: from the diameter)");
    ce->add_option("--samples", emb.samples);
    ce->add_option("--seed", emb.seed)->each([&](const std::string&) { emb.seed_set = true; });
    ce->add_option("--base", emb.base, "base vertex");
    ce->add_option("--out-prefix", emb.out_prefix)->required();
    ce->callback([&] { cmd_embed(emb); });

    VerifyArgs ver;
    auto* cv = app.add_subcommand("verify", "Re-check embedding invariants and emit the profile");
    cv->add_option("--graph", ver.graph)->required();
    cv->add_option("--dump", ver.dump)->required();
    cv->add_option("--report", ver.report)->required();
    cv->add_option("--out", ver.out)->required();
    cv->add_option("--csv", ver.csv, "also write (t, rho1, rho2) rows");
    cv->callback([&] { cmd_verify(ver); });

    CertifyArgs cert;
    auto* cc = app.add_subcommand("certify", "Run the expansion exhaustion process");
    cc->add_option("--graph", cert.graph)->required();
    cc->add_option("--measure", cert.measure)->required();
    cc->add_option("--s", cert.s, "proximity scale")->required();
    cc->add_option("--T", cert.T, "diameter threshold")->required();
    cc->add_option("--phi", cert.phi)->each([&](const std::string&) { cert.phi_set = true; });
    cc->add_option("--D", cert.d_constant, "derive phi = s/(4D) - 2")
        ->each([&](const std::string&) { cert.d_set = true; });
    cc->add_option("--strategy", cert.strategy, "exhaustive|balls|sweep|candidate");
    cc->add_option("--out", cert.out)->required();
    cc->callback([&] { cmd_certify(cert); });

    ParamsArgs par;
    auto* cp = app.add_subcommand("params", "Search cut parameters for the expansion conditions");
    cp->add_option("--D", par.d_constant)->required();
    cp->add_option("--r", par.r)->required();
    cp->add_option("--out", par.out);
    cp->callback([&] { cmd_params(par); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const InvariantViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
