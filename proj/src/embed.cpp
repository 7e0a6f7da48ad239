#include "coarse/embed.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coarse/rng.hpp"

namespace coarse {

namespace {
constexpr std::uint64_t kSignTag = 0x5851f42d4c957f2dULL;
constexpr int kViolationLogCap = 16;
}  // namespace

int OmegaSample::sign_of(int leader) const {
    auto it = std::lower_bound(signs.begin(), signs.end(), std::make_pair(leader, -2));
    if (it == signs.end() || it->first != leader)
        throw std::invalid_argument("omega sample: no sign for leader");
    return it->second;
}

std::uint64_t omega_key(std::uint64_t seed, int delta, int index) {
    return chain(chain(seed, static_cast<std::uint64_t>(delta)), static_cast<std::uint64_t>(index));
}

std::vector<int> draw_lambda(std::uint64_t key, int delta, int rounds) {
    Rng rng(key);
    std::vector<int> lambda(rounds);
    for (int j = 0; j < rounds; ++j) lambda[j] = 1 + static_cast<int>(rng.below(delta));
    return lambda;
}

int leader_sign(std::uint64_t key, int leader) {
    return (chain(key ^ kSignTag, static_cast<std::uint64_t>(leader)) & 1) ? 1 : -1;
}

std::vector<std::pair<OmegaSample, Decomposition>> sample_omega(const Graph& g, int delta, int rounds,
                                                                std::uint64_t seed, int count) {
    if (count < 1) throw std::invalid_argument("sample_omega: count must be >= 1");
    std::vector<std::pair<OmegaSample, Decomposition>> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        OmegaSample omega;
        omega.key = omega_key(seed, delta, i);
        omega.delta = delta;
        omega.index = i;
        omega.lambda = draw_lambda(omega.key, delta, rounds);
        Decomposition dec = kpr_decompose(g, delta, rounds, omega.lambda);
        omega.signs.reserve(dec.components.size());
        for (const auto& c : dec.components)
            omega.signs.emplace_back(c.leader, leader_sign(omega.key, c.leader));
        out.emplace_back(std::move(omega), std::move(dec));
    }
    return out;
}

double eval_f(const Graph& g, const Decomposition& dec, const OmegaSample& omega, int u) {
    if (static_cast<int>(dec.leader_of.size()) != g.n)
        throw std::invalid_argument("eval_f: decomposition does not cover the graph");
    const int leader = dec.leader_of[u];
    if (leader < 0) return 0.0;
    std::vector<int> cut;
    for (const auto& round : dec.deleted) cut.insert(cut.end(), round.begin(), round.end());
    if (cut.empty()) return 0.0;
    auto dist = distance_to_set(g, cut);
    return static_cast<double>(omega.sign_of(leader)) * dist[u];
}

ScaleBlock embed_scale(const Graph& g, int delta, int rounds, int samples, std::uint64_t seed) {
    if (g.n < 2) throw std::invalid_argument("embed_scale: graph must have at least 2 vertices");
    if (delta < 1 || rounds < 1 || samples < 1)
        throw std::invalid_argument("embed_scale: bad parameters");

    ScaleBlock b;
    b.delta = delta;
    if ((delta & (delta - 1)) == 0) {
        int i = 0;
        while ((1 << i) < delta) ++i;
        b.scale_index = i;
        b.weight = std::pow(2.0 / 3.0, i);
    }
    b.n = g.n;
    b.samples = samples;
    b.values.assign(static_cast<size_t>(g.n) * samples, 0.0);

    std::vector<int> cut;
    for (int si = 0; si < samples; ++si) {
        const std::uint64_t key = omega_key(seed, delta, si);
        auto lambda = draw_lambda(key, delta, rounds);
        Decomposition dec = kpr_decompose(g, delta, rounds, lambda);

        cut.clear();
        for (const auto& round : dec.deleted) cut.insert(cut.end(), round.begin(), round.end());
        if (cut.empty()) continue;  // nothing deleted: f is identically 0
        auto dist = distance_to_set(g, cut);

        for (const auto& c : dec.components) {
            const double sg = leader_sign(key, c.leader);
            for (int v : c.vertices) {
                const double f = sg * dist[v];
                b.values[static_cast<size_t>(v) * samples + si] = f;
                if (2.0 * std::abs(f) > delta) {
                    ++b.magnitude_violations;
                    if (static_cast<int>(b.violation_log.size()) < kViolationLogCap)
                        b.violation_log.push_back({v, si, f});
                }
            }
        }
    }
    return b;
}

double block_distance(const ScaleBlock& b, int u, int v) {
    const double* a = &b.values[static_cast<size_t>(u) * b.samples];
    const double* c = &b.values[static_cast<size_t>(v) * b.samples];
    double s = 0;
    for (int i = 0; i < b.samples; ++i) s += std::abs(a[i] - c[i]);
    return s / b.samples;
}

long long count_lipschitz_violations(const ScaleBlock& b, const Graph& g) {
    long long bad = 0;
    for (const auto& [u, v] : g.edges) {
        const double* a = &b.values[static_cast<size_t>(u) * b.samples];
        const double* c = &b.values[static_cast<size_t>(v) * b.samples];
        for (int i = 0; i < b.samples; ++i)
            if (std::abs(a[i] - c[i]) > 1.0) ++bad;
    }
    return bad;
}

int default_i_max(const Graph& g) {
    int diam = 0;
    if (g.n <= 2048) {
        for (int s = 0; s < g.n; ++s)
            for (int v : bfs_distances(g, s)) diam = std::max(diam, v);
    } else {
        // Double sweep: exact on trees, a good lower bound elsewhere.
        auto d0 = bfs_distances(g, 0);
        int far = static_cast<int>(std::max_element(d0.begin(), d0.end()) - d0.begin());
        for (int v : bfs_distances(g, far)) diam = std::max(diam, v);
    }
    int i = 1;
    while ((1 << i) < diam) ++i;  // i = ceil(log2(diam))
    return i + 1;
}

L1Point multiscale_embed(const Graph& g, int rounds, int i_max, int samples, std::uint64_t seed,
                         int base_vertex) {
    if (i_max < 1) throw std::invalid_argument("multiscale_embed: i_max must be >= 1");
    if (base_vertex < 0 || base_vertex >= g.n)
        throw std::invalid_argument("multiscale_embed: base vertex out of range");

    L1Point p;
    p.base_vertex = base_vertex;
    p.rounds = rounds;
    p.seed = seed;
    for (int i = 1; i <= i_max; ++i) {
        ScaleBlock b = embed_scale(g, 1 << i, rounds, samples, seed);
        std::vector<double> base(samples);
        for (int s = 0; s < samples; ++s) base[s] = b.value(base_vertex, s);
        for (int v = 0; v < g.n; ++v) {
            double* row = &b.values[static_cast<size_t>(v) * samples];
            for (int s = 0; s < samples; ++s) row[s] -= base[s];
        }
        p.base_rows.push_back(std::move(base));
        p.blocks.push_back(std::move(b));
    }
    return p;
}

double l1_distance(const L1Point& p, int u, int v) {
    double s = 0;
    for (const auto& b : p.blocks) s += b.weight * block_distance(b, u, v);
    return s;
}

double theta_expectation(double a, double b, bool same_leader, bool u_cut, bool v_cut) {
    if (u_cut && v_cut) return 0.0;
    if (u_cut) return b;
    if (v_cut) return a;
    if (same_leader) return std::abs(a - b);
    return (std::abs(a - b) + std::abs(a + b)) / 2.0;
}

double exact_pair_expectation(const Graph& g, int delta, int rounds, int u, int v, ZeroResidue zr) {
    double count = std::pow(static_cast<double>(delta), rounds);
    if (count > 1e6) throw std::invalid_argument("exact_pair_expectation: enumeration too large");

    std::vector<int> lambda(rounds, 1);
    double total = 0;
    long long cases = 0;
    for (;;) {
        Decomposition dec = kpr_decompose(g, delta, rounds, lambda, zr);
        std::vector<int> cut;
        for (const auto& round : dec.deleted) cut.insert(cut.end(), round.begin(), round.end());
        double a = 0, b = 0;
        bool u_cut = dec.leader_of[u] < 0, v_cut = dec.leader_of[v] < 0;
        bool same = !u_cut && !v_cut && dec.leader_of[u] == dec.leader_of[v];
        if (!cut.empty()) {
            auto dist = distance_to_set(g, cut);
            if (!u_cut) a = dist[u];
            if (!v_cut) b = dist[v];
        }
        total += theta_expectation(a, b, same, u_cut, v_cut);
        ++cases;

        int j = 0;
        while (j < rounds && lambda[j] == delta) lambda[j++] = 1;
        if (j == rounds) break;
        ++lambda[j];
    }
    return total / cases;
}

PaddingEstimate padding_from_block(const ScaleBlock& b, int rounds) {
    if (b.n < 2) throw std::invalid_argument("padding: need at least 2 vertices");
    PaddingEstimate est;
    est.delta = b.delta;
    est.rounds = rounds;
    est.samples = b.samples;

    double best_mean = -1;
    int best_v = 0;
    for (int v = 0; v < b.n; ++v) {
        double s = 0;
        for (int i = 0; i < b.samples; ++i) s += std::abs(b.value(v, i));
        double mean = s / b.samples;
        if (best_mean < 0 || mean < best_mean) {
            best_mean = mean;
            best_v = v;
        }
    }
    double var = 0;
    for (int i = 0; i < b.samples; ++i) {
        double x = std::abs(b.value(best_v, i)) - best_mean;
        var += x * x;
    }
    var /= std::max(1, b.samples - 1);

    est.epsilon_hat = best_mean / b.delta;
    est.half_width = 1.959963984540054 * std::sqrt(var / b.samples) / b.delta;
    est.argmin_vertex = best_v;
    return est;
}

PaddingEstimate estimate_padding(const Graph& g, int delta, int rounds, int samples,
                                 std::uint64_t seed) {
    return padding_from_block(embed_scale(g, delta, rounds, samples, seed), rounds);
}

}  // namespace coarse
