#include "coarse/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace coarse {

namespace {

std::vector<Component> wrap_components(std::vector<std::vector<int>> comps) {
    std::vector<Component> out;
    out.reserve(comps.size());
    for (auto& c : comps) out.push_back({c.front(), std::move(c)});
    return out;
}

std::vector<int> all_vertices(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

void fill_leader_of(Decomposition& dec, int n) {
    dec.leader_of.assign(n, -1);
    for (const auto& c : dec.components)
        for (int v : c.vertices) dec.leader_of[v] = c.leader;
}

}  // namespace

RoundCut residue_round(const Graph& g, const std::vector<int>& live, int delta, int offset,
                       ZeroResidue zr) {
    if (live.empty()) throw std::invalid_argument("residue_round: live set is empty");
    if (delta < 1) throw std::invalid_argument("residue_round: delta must be >= 1");
    if (offset < 1 || offset > delta)
        throw std::invalid_argument("residue_round: offset must lie in [1, delta]");
    const int match = offset % delta;

    RoundCut out;
    auto comps = induced_components(g, live);
    for (const auto& comp : comps) {
        const int leader = comp.front();
        auto dist = induced_bfs(g, comp, leader);
        for (int v : comp) {
            const int dv = dist[v];
            if (dv % delta != match) continue;
            if (zr == ZeroResidue::kept && dv == 0) continue;
            out.deleted.push_back(v);
        }
    }
    std::sort(out.deleted.begin(), out.deleted.end());

    std::vector<int> survivors;
    survivors.reserve(live.size() - out.deleted.size());
    std::set_difference(live.begin(), live.end(), out.deleted.begin(), out.deleted.end(),
                        std::back_inserter(survivors));
    out.components = wrap_components(induced_components(g, survivors));
    return out;
}

Decomposition kpr_decompose(const Graph& g, int delta, int rounds, const std::vector<int>& lambda,
                            ZeroResidue zr) {
    if (rounds < 1) throw std::invalid_argument("kpr_decompose: rounds must be >= 1");
    if (static_cast<int>(lambda.size()) != rounds)
        throw std::invalid_argument("kpr_decompose: offsets must have one entry per round");

    Decomposition dec;
    dec.delta = delta;
    dec.rounds = rounds;
    dec.variant = CutVariant::residue;

    std::vector<int> live = all_vertices(g.n);
    RoundCut rc;
    rc.components = wrap_components(induced_components(g, live));
    for (int j = 0; j < rounds; ++j) {
        rc = residue_round(g, live, delta, lambda[j], zr);
        dec.offsets.push_back({lambda[j]});
        dec.deleted.push_back(rc.deleted);
        std::vector<int> next;
        next.reserve(live.size() - rc.deleted.size());
        std::set_difference(live.begin(), live.end(), rc.deleted.begin(), rc.deleted.end(),
                            std::back_inserter(next));
        live.swap(next);
        if (live.empty()) {
            // Remaining rounds cannot delete anything.
            for (int k = j + 1; k < rounds; ++k) {
                dec.offsets.push_back({lambda[k]});
                dec.deleted.push_back({});
            }
            break;
        }
    }
    dec.components = rc.components;
    fill_leader_of(dec, g.n);
    return dec;
}

long long kpr_diameter_bound(int delta, int r) {
    if (r < 2) throw std::invalid_argument("kpr_diameter_bound: r must be >= 2");
    if (delta < 1) throw std::invalid_argument("kpr_diameter_bound: delta must be >= 1");
    return static_cast<long long>(r - 1) * (4LL * (r + 1) * delta + 1);
}

int component_induced_diameter(const Graph& g, const std::vector<int>& comp) {
    int best = 0;
    for (int v : comp) {
        auto dist = induced_bfs(g, comp, v);
        for (int w : comp) {
            if (dist[w] < 0) throw std::invalid_argument("component_induced_diameter: set not connected");
            best = std::max(best, dist[w]);
        }
    }
    return best;
}

AnnulusCut annulus_round(const Graph& g, const std::vector<int>& component, const VertexMeasure& nu,
                         int s, int t, int center) {
    if (s < 1 || t < 1) throw std::invalid_argument("annulus_round: s and t must be >= 1");
    const int delta = t + 2 * s;
    auto dist = induced_bfs(g, component, center);

    // Vertex at distance d is deleted by alpha iff (d - alpha) mod delta is
    // in [1, 2s], i.e. by exactly the 2s offsets alpha = d - j (mod delta).
    std::vector<double> mass(delta, 0.0);
    for (int v : component) {
        const double w = nu.weights[v];
        if (w == 0) continue;
        for (int j = 1; j <= 2 * s; ++j) {
            int a = (dist[v] - j) % delta;
            if (a < 0) a += delta;
            mass[a] += w;
        }
    }
    int alpha = 0;
    for (int a = 1; a < delta; ++a)
        if (mass[a] < mass[alpha]) alpha = a;

    AnnulusCut cut;
    cut.alpha = alpha;
    for (int v : component) {
        int res = (dist[v] - alpha) % delta;
        if (res < 0) res += delta;
        if (res >= 1 && res <= 2 * s) cut.deleted.push_back(v);
    }
    return cut;
}

Decomposition annulus_decompose(const Graph& g, const VertexMeasure& nu, int s, int t, int rounds) {
    if (rounds < 1) throw std::invalid_argument("annulus_decompose: rounds must be >= 1");
    if (nu.size() != g.n) throw std::invalid_argument("annulus_decompose: measure size mismatch");

    Decomposition dec;
    dec.delta = t + 2 * s;
    dec.rounds = rounds;
    dec.variant = CutVariant::annulus;

    std::vector<int> live = all_vertices(g.n);
    auto comps = wrap_components(induced_components(g, live));
    for (int j = 0; j < rounds; ++j) {
        std::vector<int> round_deleted;
        std::vector<int> round_alphas;
        for (const auto& comp : comps) {
            auto cut = annulus_round(g, comp.vertices, nu, s, t, comp.leader);
            round_alphas.push_back(cut.alpha);
            round_deleted.insert(round_deleted.end(), cut.deleted.begin(), cut.deleted.end());
        }
        std::sort(round_deleted.begin(), round_deleted.end());
        dec.offsets.push_back(std::move(round_alphas));
        dec.deleted.push_back(round_deleted);

        std::vector<int> next;
        next.reserve(live.size() - round_deleted.size());
        std::set_difference(live.begin(), live.end(), round_deleted.begin(), round_deleted.end(),
                            std::back_inserter(next));
        live.swap(next);
        comps = wrap_components(induced_components(g, live));
    }
    dec.components = comps;
    fill_leader_of(dec, g.n);
    return dec;
}

namespace {

using u128 = unsigned __int128;

bool mul_u128(u128 a, u128 b, u128& out) {
    if (a != 0 && b > std::numeric_limits<u128>::max() / a) return false;
    out = a * b;
    return true;
}

bool pow_u128(u128 base, int exp, u128& out) {
    out = 1;
    for (int i = 0; i < exp; ++i)
        if (!mul_u128(out, base, out)) return false;
    return true;
}

// Exact binary rational P/Q == x. Fails when the denominator exponent is too
// large to keep the later products inside 128 bits.
bool rational_of(double x, unsigned long long& p, unsigned long long& q) {
    if (!(x > 0) || !std::isfinite(x)) return false;
    int e;
    double m = std::frexp(x, &e);
    auto mant = static_cast<unsigned long long>(std::ldexp(m, 53));
    int e2 = e - 53;  // x = mant * 2^e2
    while (mant % 2 == 0 && e2 < 0) {
        mant /= 2;
        ++e2;
    }
    if (e2 >= 0) {
        if (e2 > 10) return false;
        p = mant << e2;
        q = 1;
    } else {
        if (-e2 > 40) return false;
        p = mant;
        q = 1ULL << (-e2);
    }
    return true;
}

}  // namespace

bool condition_vv(int s, long long t, int r, double d_constant) {
    if (s < 1 || t < 1 || r < 1) return false;
    unsigned long long p, q;
    if (rational_of(d_constant, p, q)) {
        // (s*q - 4p)/(4p) * (t/(2s+t))^r > 1  <=>  (s*q - 4p) * t^r > 4p * (2s+t)^r
        u128 sq = static_cast<u128>(s) * q;
        u128 fourp = static_cast<u128>(4) * p;
        if (sq <= fourp) return false;  // phi <= 0
        u128 lhs_coeff = sq - fourp;
        u128 tr, dr, lhs, rhs;
        if (pow_u128(static_cast<u128>(t), r, tr) &&
            pow_u128(static_cast<u128>(t) + 2 * static_cast<u128>(s), r, dr) &&
            mul_u128(lhs_coeff, tr, lhs) && mul_u128(fourp, dr, rhs)) {
            return lhs > rhs;
        }
    }
    // Fallback for extreme magnitudes.
    long double phi = static_cast<long double>(s) / (4.0L * d_constant) - 2.0L;
    if (phi <= 0) return false;
    long double ratio = static_cast<long double>(t) / (static_cast<long double>(t) + 2.0L * s);
    return (phi + 1.0L) * std::pow(ratio, static_cast<long double>(r)) > 1.0L;
}

bool condition_vvv(int s, long long t, long long n, int r) {
    // (r-1)(4(r+1)t + 1) < n - s/2  <=>  2(r-1)(4(r+1)t + 1) + s < 2n
    u128 bound = static_cast<u128>(r - 1) * (4 * static_cast<u128>(r + 1) * static_cast<u128>(t) + 1);
    return 2 * bound + static_cast<u128>(s) < 2 * static_cast<u128>(n);
}

CutParameters parameter_search(double d_constant, int r) {
    if (!(d_constant > 0)) throw std::invalid_argument("parameter_search: D must be positive");
    if (r < 2) throw std::invalid_argument("parameter_search: r must be >= 2");

    int s = static_cast<int>(std::floor(8.0 * d_constant)) + 1;
    while (!(static_cast<double>(s) > 8.0 * d_constant)) ++s;

    constexpr long long kMaxT = 1LL << 40;
    for (;; ++s) {
        if (!(static_cast<double>(s) / (4.0 * d_constant) - 2.0 > 0)) continue;

        // Monotone in t, so find the smallest t by doubling + binary search.
        long long hi = 1;
        while (hi <= kMaxT && !condition_vv(s, hi, r, d_constant)) hi *= 2;
        if (hi > kMaxT) continue;  // require a larger s before t explodes
        long long lo = hi / 2 + 1;
        if (hi == 1) lo = 1;
        while (lo < hi) {
            long long mid = lo + (hi - lo) / 2;
            if (condition_vv(s, mid, r, d_constant))
                hi = mid;
            else
                lo = mid + 1;
        }
        const long long t = lo;

        // Smallest n with 2n > 2*(r-1)(4(r+1)t+1) + s, then enforce 2n > s.
        long long bound = (r - 1) * (4LL * (r + 1) * t + 1);
        long long n = (2 * bound + s) / 2 + 1;
        while (2 * n <= s) ++n;

        if (!condition_vv(s, t, r, d_constant) || !condition_vvv(s, t, n, r))
            throw std::logic_error("parameter_search: verification failed");

        CutParameters out;
        out.s = s;
        out.t = t;
        out.n = n;
        out.delta = t + 2LL * s;
        out.d_constant = d_constant;
        out.r = r;
        out.phi = static_cast<double>(s) / (4.0 * d_constant) - 2.0;
        return out;
    }
}

void validate_decomposition(const Decomposition& dec, const Graph& g) {
    std::vector<int> owner(g.n, -2);
    for (const auto& round : dec.deleted)
        for (int v : round) {
            if (v < 0 || v >= g.n || owner[v] != -2)
                throw std::invalid_argument("decomposition: deleted sets do not partition");
            owner[v] = -1;
        }
    std::vector<int> survivors;
    for (const auto& c : dec.components) {
        if (c.vertices.empty() || c.leader != c.vertices.front() ||
            !std::is_sorted(c.vertices.begin(), c.vertices.end()))
            throw std::invalid_argument("decomposition: bad component ordering");
        for (int v : c.vertices) {
            if (v < 0 || v >= g.n || owner[v] != -2)
                throw std::invalid_argument("decomposition: components overlap deleted sets");
            owner[v] = c.leader;
            survivors.push_back(v);
        }
    }
    for (int v = 0; v < g.n; ++v)
        if (owner[v] == -2) throw std::invalid_argument("decomposition: vertex not covered");

    std::sort(survivors.begin(), survivors.end());
    auto comps = induced_components(g, survivors);
    if (comps.size() != dec.components.size())
        throw std::invalid_argument("decomposition: component count mismatch");
    for (size_t i = 0; i < comps.size(); ++i)
        if (comps[i] != dec.components[i].vertices)
            throw std::invalid_argument("decomposition: components not maximal connected sets");
}

}  // namespace coarse
