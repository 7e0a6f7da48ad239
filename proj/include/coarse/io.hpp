#pragma once

#include <string>

#include <json.hpp>

#include "coarse/analysis.hpp"
#include "coarse/decompose.hpp"
#include "coarse/embed.hpp"
#include "coarse/graph.hpp"
#include "coarse/measure.hpp"

namespace coarse {

using Json = nlohmann::json;

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

// Plain text: first line "n m", then m lines "u v" (0-based). A leading '{'
// or a .json suffix switches to {"n":..., "edges":[[u,v],...]}.
Graph read_graph(const std::string& path);
std::string graph_to_text(const Graph& g);
Json graph_to_json(const Graph& g);

// {"weights":[...]} directly, or the first-coordinate marginal of
// {"pairs":[[u,v,w],...]}.
VertexMeasure read_vertex_measure(const std::string& path, int n);
PairMeasure read_pair_measure(const std::string& path);
Json pair_measure_to_json(const PairMeasure& mu);
Json vertex_measure_to_json(const VertexMeasure& nu);

Json decomposition_to_json(const Decomposition& dec);
Json params_to_json(const CutParameters& p);
Json certificate_to_json(const ExpansionCertificate& cert);
Json trace_to_json(const ExhaustionTrace& tr);
Json profile_to_json(const DistortionProfile& prof);
std::string profile_to_csv(const DistortionProfile& prof);

// Dump: CSV "vertex,scale,sample,value" holding the centered coordinates.
// The report keeps everything needed to audit the dump: scale metadata,
// padding estimates, magnitude-violation counts, and the raw base rows.
std::string embedding_to_csv(const L1Point& p);
Json embed_report(const L1Point& p, const Graph& g, const Json& config);
L1Point read_embedding(const std::string& dump_path, const Json& report);

}  // namespace coarse
