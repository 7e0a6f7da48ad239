#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "coarse/decompose.hpp"
#include "coarse/graph.hpp"

namespace coarse {

// One draw from the product space of offsets and signs: lambda drives the
// cuts, signs are assigned per realized component leader.
struct OmegaSample {
    std::vector<int> lambda;
    std::vector<std::pair<int, int>> signs;  // (leader, +-1), ordered by leader
    std::uint64_t key = 0;                   // seed lineage: chain(chain(seed, delta), index)
    int delta = 0;
    int index = 0;

    int sign_of(int leader) const;
};

// Counter-based key for sample `index` at scale `delta`; identical keys are
// used by embed_scale, estimate_padding, and verification re-runs.
std::uint64_t omega_key(std::uint64_t seed, int delta, int index);

std::vector<int> draw_lambda(std::uint64_t key, int delta, int rounds);
int leader_sign(std::uint64_t key, int leader);

// `count` independent (sample, decomposition) draws; deterministic under
// (seed, delta, count).
std::vector<std::pair<OmegaSample, Decomposition>> sample_omega(const Graph& g, int delta, int rounds,
                                                                std::uint64_t seed, int count);

// Signed distance-to-cut: 0 on deleted vertices, otherwise
// sign(leader of u's component) * dist(u, union of deleted sets) in the whole
// graph. When no vertex was deleted the function is identically 0.
double eval_f(const Graph& g, const Decomposition& dec, const OmegaSample& omega, int u);

struct MagnitudeViolation {
    int vertex = 0;
    int sample = 0;
    double value = 0;
};

// Sampled coordinates of one scale: values[v*samples + s] is the f-value of
// vertex v under sample s.
struct ScaleBlock {
    int scale_index = 0;  // i with delta == 2^i; 0 when delta is not a power of two
    int delta = 0;
    double weight = 1.0;  // (2/3)^i
    int n = 0;
    int samples = 0;
    std::vector<double> values;
    long long magnitude_violations = 0;        // |f| > delta/2 occurrences (logged, not masked)
    std::vector<MagnitudeViolation> violation_log;  // first few, for reports

    double value(int v, int s) const { return values[static_cast<size_t>(v) * samples + s]; }
};

ScaleBlock embed_scale(const Graph& g, int delta, int rounds, int samples, std::uint64_t seed);

// Empirical mean of |a - b| over samples (unweighted).
double block_distance(const ScaleBlock& b, int u, int v);

// Per-sample Lipschitz audit: count of (edge, sample) pairs with
// |f(u) - f(v)| > 1.
long long count_lipschitz_violations(const ScaleBlock& b, const Graph& g);

// Multi-scale point set: blocks for delta = 2, 4, ..., 2^i_max, centered so
// the base vertex is the zero vector. base_rows keeps the raw f-values of the
// base vertex so magnitude can be audited after centering.
struct L1Point {
    int base_vertex = 0;
    int rounds = 0;
    std::uint64_t seed = 0;
    std::vector<ScaleBlock> blocks;
    std::vector<std::vector<double>> base_rows;
};

int default_i_max(const Graph& g);  // ceil(log2(diameter)) + 1

L1Point multiscale_embed(const Graph& g, int rounds, int i_max, int samples, std::uint64_t seed,
                         int base_vertex);

// Weighted sum over scales of empirical block distances.
double l1_distance(const L1Point& p, int u, int v);

// Exact expectation over independent uniform signs of |F_u - F_v| given the
// cut magnitudes a, b of the two vertices.
double theta_expectation(double a, double b, bool same_leader, bool u_cut, bool v_cut);

// Exact E |F_u - F_v| by full enumeration of all offset vectors (requires
// delta^rounds <= 1e6) with the closed-form sign expectation.
double exact_pair_expectation(const Graph& g, int delta, int rounds, int u, int v,
                              ZeroResidue zr = ZeroResidue::deletable);

struct PaddingEstimate {
    int delta = 0;
    int rounds = 0;
    int samples = 0;
    double epsilon_hat = 0;  // min over vertices of mean |F_u| / delta
    double half_width = 0;   // 95% normal-approximation half width, same scale
    int argmin_vertex = 0;
};

PaddingEstimate estimate_padding(const Graph& g, int delta, int rounds, int samples,
                                 std::uint64_t seed);
PaddingEstimate padding_from_block(const ScaleBlock& b, int rounds);

}  // namespace coarse
