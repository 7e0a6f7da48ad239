#include "coarse/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace coarse {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

Json read_json_file(const std::string& path) {
    return Json::parse(read_text_file(path));
}

void write_json_file(const std::string& path, const Json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

Graph read_graph(const std::string& path) {
    const std::string text = read_text_file(path);
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        Json j = Json::parse(text);
        int n = j.at("n").get<int>();
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        return Graph::from_edges(n, std::move(edges));
    }
    std::istringstream in(text);
    int n, m;
    if (!(in >> n >> m)) throw std::runtime_error("graph file: bad header: " + path);
    std::vector<Edge> edges;
    edges.reserve(m);
    for (int i = 0; i < m; ++i) {
        int u, v;
        if (!(in >> u >> v)) throw std::runtime_error("graph file: truncated edge list: " + path);
        edges.emplace_back(u, v);
    }
    return Graph::from_edges(n, std::move(edges));
}

std::string graph_to_text(const Graph& g) {
    std::ostringstream out;
    out << g.n << ' ' << g.m() << '\n';
    for (const auto& [u, v] : g.edges) out << u << ' ' << v << '\n';
    return out.str();
}

Json graph_to_json(const Graph& g) {
    Json j;
    j["n"] = g.n;
    Json edges = Json::array();
    for (const auto& [u, v] : g.edges) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    return j;
}

VertexMeasure read_vertex_measure(const std::string& path, int n) {
    Json j = read_json_file(path);
    if (j.contains("weights")) {
        auto w = j.at("weights").get<std::vector<double>>();
        if (static_cast<int>(w.size()) != n)
            throw std::runtime_error("vertex measure: weight count does not match graph");
        return VertexMeasure::from_weights(std::move(w));
    }
    if (j.contains("pairs")) {
        PairMeasure mu;
        for (const auto& e : j.at("pairs")) {
            PairMeasure::Entry entry{e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()};
            if (entry.w <= 0) throw std::runtime_error("pair measure: weights must be positive");
            mu.support.push_back(entry);
        }
        return mu.marginal(n);
    }
    throw std::runtime_error("vertex measure: expected \"weights\" or \"pairs\": " + path);
}

PairMeasure read_pair_measure(const std::string& path) {
    Json j = read_json_file(path);
    PairMeasure mu;
    for (const auto& e : j.at("pairs"))
        mu.support.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
    if (j.contains("separation")) mu.separation = j.at("separation").get<int>();
    return mu;
}

Json pair_measure_to_json(const PairMeasure& mu) {
    Json pairs = Json::array();
    for (const auto& e : mu.support) pairs.push_back({e.u, e.v, e.w});
    Json j;
    j["pairs"] = std::move(pairs);
    j["separation"] = mu.separation;
    return j;
}

Json vertex_measure_to_json(const VertexMeasure& nu) {
    Json j;
    j["weights"] = nu.weights;
    return j;
}

Json decomposition_to_json(const Decomposition& dec) {
    Json j;
    j["delta"] = dec.delta;
    j["rounds"] = dec.rounds;
    j["variant"] = dec.variant == CutVariant::residue ? "residue" : "annulus";
    if (dec.variant == CutVariant::residue) {
        Json offsets = Json::array();
        for (const auto& round : dec.offsets) offsets.push_back(round.at(0));
        j["offsets"] = std::move(offsets);
    } else {
        j["offsets"] = dec.offsets;
    }
    j["deleted"] = dec.deleted;
    Json comps = Json::array();
    for (const auto& c : dec.components) {
        Json jc;
        jc["leader"] = c.leader;
        jc["vertices"] = c.vertices;
        comps.push_back(std::move(jc));
    }
    j["components"] = std::move(comps);
    return j;
}

Json params_to_json(const CutParameters& p) {
    Json j;
    j["D"] = p.d_constant;
    j["r"] = p.r;
    j["s"] = p.s;
    j["t"] = p.t;
    j["n"] = p.n;
    j["delta"] = p.delta;
    j["phi"] = p.phi;
    j["vv_holds"] = condition_vv(p.s, p.t, p.r, p.d_constant);
    j["vvv_holds"] = condition_vvv(p.s, p.t, p.n, p.r);
    return j;
}

Json certificate_to_json(const ExpansionCertificate& cert) {
    Json j;
    j["type"] = "certificate";
    j["f"] = cert.f_vertices;
    j["phi"] = cert.phi;
    j["s"] = cert.s;
    j["T"] = cert.diameter_threshold;
    j["scope"] = cert.scope;
    Json steps = Json::array();
    for (const auto& st : cert.steps)
        steps.push_back({{"removed", st.removed}, {"boundary", st.boundary}, {"ratio", st.ratio}});
    j["stats"] = {{"steps_before", cert.steps_before},
                  {"steps", std::move(steps)},
                  {"checked_sets", cert.checked_sets},
                  {"min_ratio", cert.min_ratio},
                  {"min_ratio_set", cert.min_ratio_set}};
    return j;
}

Json trace_to_json(const ExhaustionTrace& tr) {
    Json j;
    j["type"] = "trace";
    j["s"] = tr.s;
    j["T"] = tr.diameter_threshold;
    j["phi"] = tr.phi;
    j["strategy"] = tr.strategy;
    Json steps = Json::array();
    for (const auto& st : tr.steps) {
        Json js;
        js["removed"] = st.removed;
        js["boundary"] = st.boundary;
        js["ratio"] = st.ratio;
        js["set_mass"] = st.set_mass;
        steps.push_back(std::move(js));
    }
    j["steps"] = std::move(steps);
    j["surviving"] = tr.surviving;
    j["final_set"] = tr.final_set;
    j["terminal"] = tr.terminal;
    return j;
}

Json profile_to_json(const DistortionProfile& prof) {
    Json buckets = Json::array();
    for (int t = 1; t <= prof.diameter; ++t)
        buckets.push_back({{"t", t}, {"rho1", prof.rho1_at(t)}, {"rho2", prof.rho2_at(t)}});
    Json j;
    j["n"] = prof.n;
    j["diameter"] = prof.diameter;
    j["buckets"] = std::move(buckets);
    return j;
}

std::string profile_to_csv(const DistortionProfile& prof) {
    std::ostringstream out;
    out << "t,rho1,rho2\n";
    char buf[64];
    for (int t = 1; t <= prof.diameter; ++t) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", t, prof.rho1_at(t), prof.rho2_at(t));
        out << buf;
    }
    return out.str();
}

std::string embedding_to_csv(const L1Point& p) {
    std::ostringstream out;
    out << "vertex,scale,sample,value\n";
    char buf[96];
    for (const auto& b : p.blocks)
        for (int v = 0; v < b.n; ++v)
            for (int s = 0; s < b.samples; ++s) {
                std::snprintf(buf, sizeof(buf), "%d,%d,%d,%.17g\n", v, b.scale_index, s, b.value(v, s));
                out << buf;
            }
    return out.str();
}

Json embed_report(const L1Point& p, const Graph& g, const Json& config) {
    Json scales = Json::array();
    for (size_t k = 0; k < p.blocks.size(); ++k) {
        const auto& b = p.blocks[k];
        Json js;
        js["i"] = b.scale_index;
        js["delta"] = b.delta;
        js["weight"] = b.weight;
        const auto pad = padding_from_block(b, p.rounds);
        js["epsilon_hat"] = pad.epsilon_hat;
        js["ci_half_width"] = pad.half_width;
        js["argmin_vertex"] = pad.argmin_vertex;
        js["magnitude_violations"] = b.magnitude_violations;
        Json vl = Json::array();
        for (const auto& mv : b.violation_log)
            vl.push_back({{"vertex", mv.vertex}, {"sample", mv.sample}, {"value", mv.value}});
        js["violation_log"] = std::move(vl);
        js["base_row"] = p.base_rows[k];
        scales.push_back(std::move(js));
    }
    Json j;
    j["command"] = "embed";
    j["config"] = config;
    j["graph"] = {{"n", g.n}, {"m", g.m()}};
    j["base_vertex"] = p.base_vertex;
    j["rounds"] = p.rounds;
    j["seed"] = p.seed;
    j["i_max"] = p.blocks.size();
    j["samples"] = p.blocks.empty() ? 0 : p.blocks.front().samples;
    j["scales"] = std::move(scales);
    return j;
}

L1Point read_embedding(const std::string& dump_path, const Json& report) {
    L1Point p;
    p.base_vertex = report.at("base_vertex").get<int>();
    p.rounds = report.at("rounds").get<int>();
    p.seed = report.at("seed").get<std::uint64_t>();
    const int n = report.at("graph").at("n").get<int>();
    const int samples = report.at("samples").get<int>();

    std::vector<int> index_of;  // scale_index -> block position
    for (const auto& js : report.at("scales")) {
        ScaleBlock b;
        b.scale_index = js.at("i").get<int>();
        b.delta = js.at("delta").get<int>();
        b.weight = js.at("weight").get<double>();
        b.n = n;
        b.samples = samples;
        b.values.assign(static_cast<size_t>(n) * samples, 0.0);
        b.magnitude_violations = js.at("magnitude_violations").get<long long>();
        if (static_cast<int>(index_of.size()) <= b.scale_index) index_of.resize(b.scale_index + 1, -1);
        index_of[b.scale_index] = static_cast<int>(p.blocks.size());
        p.blocks.push_back(std::move(b));
        auto base = js.at("base_row").get<std::vector<double>>();
        if (static_cast<int>(base.size()) != samples)
            throw std::runtime_error("embedding report: base row length mismatch");
        p.base_rows.push_back(std::move(base));
    }

    std::ifstream in(dump_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open embedding dump: " + dump_path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("vertex,scale,sample,value", 0) != 0)
        throw std::runtime_error("embedding dump: bad header");
    size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        int v, i, s;
        double x;
        if (std::sscanf(line.c_str(), "%d,%d,%d,%lf", &v, &i, &s, &x) != 4)
            throw std::runtime_error("embedding dump: bad row: " + line);
        if (i < 0 || i >= static_cast<int>(index_of.size()) || index_of[i] < 0)
            throw std::runtime_error("embedding dump: unknown scale index");
        ScaleBlock& b = p.blocks[index_of[i]];
        if (v < 0 || v >= b.n || s < 0 || s >= b.samples)
            throw std::runtime_error("embedding dump: cell out of range");
        b.values[static_cast<size_t>(v) * b.samples + s] = x;
        ++rows;
    }
    size_t expected = 0;
    for (const auto& b : p.blocks) expected += static_cast<size_t>(b.n) * b.samples;
    if (rows != expected) throw std::runtime_error("embedding dump: cell count mismatch");
    return p;
}

}  // namespace coarse
