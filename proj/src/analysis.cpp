#include "coarse/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace coarse {

DistortionProfile contract_profile(const L1Point& p, const MetricSpace& m) {
    if (p.blocks.empty() || p.blocks.front().n != m.n)
        throw std::invalid_argument("contract_profile: embedding does not cover the metric");

    DistortionProfile prof;
    prof.n = m.n;
    prof.diameter = m.diameter();
    if (prof.diameter < 1) return prof;

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> min_at(prof.diameter + 1, inf), max_at(prof.diameter + 1, -inf);
    for (int u = 0; u < m.n; ++u)
        for (int v = u + 1; v < m.n; ++v) {
            const int t = m.dist(u, v);
            const double e = l1_distance(p, u, v);
            min_at[t] = std::min(min_at[t], e);
            max_at[t] = std::max(max_at[t], e);
        }

    prof.rho1.assign(prof.diameter, 0.0);
    prof.rho2.assign(prof.diameter, 0.0);
    double running_max = -inf;
    for (int t = 1; t <= prof.diameter; ++t) {
        running_max = std::max(running_max, max_at[t]);
        prof.rho2[t - 1] = running_max;
    }
    double running_min = inf;
    for (int t = prof.diameter; t >= 1; --t) {
        running_min = std::min(running_min, min_at[t]);
        prof.rho1[t - 1] = running_min;
    }
    for (int t = 1; t <= prof.diameter; ++t)
        if (prof.rho2[t - 1] > 3.0 * t)
            throw std::logic_error("contract_profile: upper envelope exceeds 3t");
    return prof;
}

double phi_threshold(double d_constant, int s) {
    if (!(d_constant > 0)) throw std::invalid_argument("phi_threshold: D must be positive");
    return static_cast<double>(s) / (4.0 * d_constant) - 2.0;
}

bool expansion_qualifies(double boundary_mass, double set_mass, double phi) {
    return boundary_mass <= phi * set_mass;
}

Strategy strategy_from_string(const std::string& name) {
    if (name == "exhaustive") return Strategy::exhaustive;
    if (name == "balls") return Strategy::balls;
    if (name == "sweep") return Strategy::sweep;
    if (name == "candidate" || name == "candidate-family") return Strategy::candidate_family;
    throw std::invalid_argument("unknown strategy: " + name);
}

std::string strategy_to_string(Strategy s) {
    switch (s) {
        case Strategy::exhaustive: return "exhaustive";
        case Strategy::balls: return "balls";
        case Strategy::sweep: return "sweep";
        case Strategy::candidate_family: return "candidate";
    }
    return "?";
}

namespace {

std::string scope_of(Strategy s) {
    switch (s) {
        case Strategy::exhaustive: return "exhaustive";
        case Strategy::balls: return "candidate-family:balls";
        case Strategy::sweep: return "candidate-family:sweep";
        case Strategy::candidate_family: return "candidate-family:balls+sweep";
    }
    return "?";
}

std::vector<int> boundary_within(const Graph& G, const std::vector<char>& in_f,
                                 const std::vector<int>& a) {
    std::vector<char> in_a(G.n, 0);
    for (int v : a) in_a[v] = 1;
    std::vector<char> hit(G.n, 0);
    std::vector<int> out;
    for (int v : a)
        for (int w : G.adj[v])
            if (in_f[w] && !in_a[w] && !hit[w]) {
                hit[w] = 1;
                out.push_back(w);
            }
    std::sort(out.begin(), out.end());
    return out;
}

// True iff the pairwise diameter of pts stays below the threshold; exits on
// the first far pair, so oversized candidate sets are cheap to reject.
bool set_diameter_below(const MetricSpace& m, const std::vector<int>& pts, double threshold) {
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            if (!(m.dist(pts[i], pts[j]) < threshold)) return false;
    return true;
}

// Heuristic candidate families over the current survivor set, streamed to
// keep memory flat: metric balls around every center and distance-sorted
// prefixes from every center. Candidates arrive as sorted vertex lists.
template <class Fn>
void for_each_heuristic_candidate(const MetricSpace& m, const std::vector<int>& f,
                                  Strategy strategy, Fn&& fn) {
    const int max_rad = m.set_diameter(f);
    if (strategy == Strategy::balls || strategy == Strategy::candidate_family) {
        std::vector<int> a;
        for (int c : f) {
            size_t last_size = 0;
            for (int rad = 0; rad <= max_rad; ++rad) {
                a.clear();
                for (int v : f)
                    if (m.dist(c, v) <= rad) a.push_back(v);
                if (a.size() == last_size) continue;  // ball did not grow
                last_size = a.size();
                fn(a);
            }
        }
    }
    if (strategy == Strategy::sweep || strategy == Strategy::candidate_family) {
        for (int c : f) {
            std::vector<int> order = f;
            std::sort(order.begin(), order.end(), [&](int x, int y) {
                return std::make_pair(m.dist(c, x), x) < std::make_pair(m.dist(c, y), y);
            });
            std::vector<int> prefix;
            for (int v : order) {
                prefix.insert(std::upper_bound(prefix.begin(), prefix.end(), v), v);
                fn(prefix);
            }
        }
    }
}

struct ScanOutcome {
    bool found = false;
    std::vector<int> best_set;       // qualifying set with the largest mass (ties: lex smallest)
    std::vector<int> best_boundary;
    double best_mass = 0;
    double best_boundary_mass = 0;
    long long checked = 0;
    double min_ratio = std::numeric_limits<double>::infinity();
    std::vector<int> argmin_set;
};

// Scans the strategy's candidate family over F, collecting the removable
// choice and ratio statistics.
ScanOutcome scan_candidates(const MetricSpace& m, const Graph& G, const VertexMeasure& nu,
                            const std::vector<int>& f, double T, double phi, Strategy strategy) {
    ScanOutcome out;
    std::vector<char> in_f(m.n, 0);
    for (int v : f) in_f[v] = 1;

    auto consider = [&](const std::vector<int>& a) {
        if (a.empty()) return;
        if (!set_diameter_below(m, a, T)) return;
        ++out.checked;
        const double mass = nu.of(a);
        const auto bd = boundary_within(G, in_f, a);
        const double bd_mass = nu.of(bd);
        if (mass > 0) {
            const double ratio = bd_mass / mass;
            if (ratio < out.min_ratio || (ratio == out.min_ratio && a < out.argmin_set)) {
                out.min_ratio = ratio;
                out.argmin_set = a;
            }
        }
        if (expansion_qualifies(bd_mass, mass, phi)) {
            if (!out.found || mass > out.best_mass ||
                (mass == out.best_mass && a < out.best_set)) {
                out.found = true;
                out.best_set = a;
                out.best_boundary = bd;
                out.best_mass = mass;
                out.best_boundary_mass = bd_mass;
            }
        }
    };

    if (strategy == Strategy::exhaustive) {
        const int k = static_cast<int>(f.size());
        if (k > 20) throw std::invalid_argument("exhaust: exhaustive strategy limited to 20 vertices");
        std::vector<int> a;
        for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
            a.clear();
            for (int i = 0; i < k; ++i)
                if (mask & (1u << i)) a.push_back(f[i]);
            consider(a);
        }
    } else {
        for_each_heuristic_candidate(m, f, strategy, consider);
    }
    return out;
}

}  // namespace

ExhaustResult exhaust(const MetricSpace& m, const VertexMeasure& nu, int s, double T, double phi,
                      Strategy strategy) {
    if (nu.size() != m.n) throw std::invalid_argument("exhaust: measure size mismatch");
    if (nu.total <= 0) throw std::invalid_argument("exhaust: empty measure");
    if (!(T > 0)) throw std::invalid_argument("exhaust: diameter threshold must be positive");
    if (strategy == Strategy::exhaustive && m.n > 20)
        throw std::invalid_argument("exhaust: exhaustive strategy limited to 20 vertices");

    const Graph G = proximity_graph(m, s);
    std::vector<int> f(m.n);
    for (int i = 0; i < m.n; ++i) f[i] = i;

    ExhaustionTrace tr;
    tr.s = s;
    tr.diameter_threshold = T;
    tr.phi = phi;
    tr.strategy = strategy_to_string(strategy);

    int steps = 0;
    for (;;) {
        if (m.set_diameter(f) < T) {
            tr.surviving.push_back(f);
            tr.final_set = f;
            tr.terminal = f.empty() ? "emptied" : "diameter-below-threshold";
            return tr;
        }
        auto scan = scan_candidates(m, G, nu, f, T, phi, strategy);
        if (!scan.found) {
            ExpansionCertificate cert;
            cert.f_vertices = f;
            cert.phi = phi;
            cert.s = s;
            cert.diameter_threshold = T;
            cert.scope = scope_of(strategy);
            cert.steps_before = steps;
            cert.steps = tr.steps;
            cert.checked_sets = scan.checked;
            cert.min_ratio = scan.min_ratio;
            cert.min_ratio_set = scan.argmin_set;
            return cert;
        }
        tr.surviving.push_back(f);
        ExhaustStep step;
        step.removed = scan.best_set;
        step.boundary = scan.best_boundary;
        step.set_mass = scan.best_mass;
        step.ratio = scan.best_mass > 0 ? scan.best_boundary_mass / scan.best_mass : 0.0;
        tr.steps.push_back(std::move(step));

        std::vector<int> gone = scan.best_set;
        gone.insert(gone.end(), scan.best_boundary.begin(), scan.best_boundary.end());
        std::sort(gone.begin(), gone.end());
        std::vector<int> next;
        next.reserve(f.size());
        std::set_difference(f.begin(), f.end(), gone.begin(), gone.end(), std::back_inserter(next));
        f.swap(next);
        ++steps;
    }
}

MinExpansion brute_force_min_expansion(const MetricSpace& m, const VertexMeasure& nu, int s, double T,
                                       const std::vector<int>* within) {
    std::vector<int> all;
    if (!within) {
        all.resize(m.n);
        for (int i = 0; i < m.n; ++i) all[i] = i;
        within = &all;
    }
    const int k = static_cast<int>(within->size());
    if (k > 20) throw std::invalid_argument("brute_force_min_expansion: instance too large");

    const Graph G = proximity_graph(m, s);
    std::vector<char> in_f(m.n, 0);
    for (int v : *within) in_f[v] = 1;

    MinExpansion best;
    std::vector<int> a;
    for (std::uint32_t mask = 1; k > 0 && mask < (1u << k); ++mask) {
        a.clear();
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) a.push_back((*within)[i]);
        const double mass = nu.of(a);
        if (!(mass > 0)) continue;
        if (!(m.set_diameter(a) < T)) continue;
        const auto bd = boundary_within(G, in_f, a);
        const double ratio = nu.of(bd) / mass;
        if (!best.found || ratio < best.ratio || (ratio == best.ratio && a < best.set)) {
            best.found = true;
            best.set = a;
            best.boundary = bd;
            best.ratio = ratio;
            best.set_mass = mass;
        }
    }
    return best;
}

bool check_separation(const ExhaustionTrace& trace, const MetricSpace& m, int s) {
    std::vector<std::vector<int>> pieces;
    for (const auto& st : trace.steps) pieces.push_back(st.removed);
    if (!trace.final_set.empty()) pieces.push_back(trace.final_set);
    for (size_t i = 0; i < pieces.size(); ++i)
        for (size_t j = i + 1; j < pieces.size(); ++j)
            if (m.set_distance(pieces[i], pieces[j]) < s) return false;
    return true;
}

SignedBumps signed_bumps(const MetricSpace& m, const std::vector<std::vector<int>>& sets, int s) {
    if (s < 1) throw std::invalid_argument("signed_bumps: s must be >= 1");
    for (const auto& a : sets)
        if (a.empty()) throw std::invalid_argument("signed_bumps: empty set");
    for (size_t i = 0; i < sets.size(); ++i)
        for (size_t j = i + 1; j < sets.size(); ++j)
            if (m.set_distance(sets[i], sets[j]) < s)
                throw std::invalid_argument("signed_bumps: sets closer than s");

    SignedBumps sb;
    sb.s = s;
    sb.count = sets.size();
    sb.bump_of.assign(m.n, -1);
    sb.magnitude.assign(m.n, 0.0);
    const double half = s / 2.0;
    for (int x = 0; x < m.n; ++x)
        for (size_t j = 0; j < sets.size(); ++j) {
            const int d = m.dist_to_set(x, sets[j]);
            if (d < half) {
                // Separation >= s makes the half-neighborhoods disjoint.
                sb.bump_of[x] = static_cast<int>(j);
                sb.magnitude[x] = half - d;
                break;
            }
        }
    return sb;
}

double SignedBumps::eval(const std::vector<int>& theta, int x) const {
    const int j = bump_of[x];
    if (j < 0) return 0.0;
    return static_cast<double>(theta.at(j)) * magnitude[x];
}

PoincareReport poincare_test(const MetricSpace& m, const PairMeasure& mu,
                             const std::vector<std::vector<int>>& sets, int s) {
    PoincareReport rep;
    rep.sets = sets;
    rep.s = s;
    rep.separation = mu.separation;

    for (size_t i = 0; i < sets.size(); ++i)
        for (size_t j = i + 1; j < sets.size(); ++j)
            if (m.set_distance(sets[i], sets[j]) < s) {
                rep.skip_reason = "sets closer than s";
                return rep;
            }
    for (const auto& a : sets)
        if (!(m.set_diameter(a) < mu.separation - s / 2.0)) {
            rep.skip_reason = "set diameter not below separation - s/2";
            return rep;
        }

    const SignedBumps sb = signed_bumps(m, sets, s);
    double integral = 0;
    for (const auto& e : mu.support) {
        const int bu = sb.bump_of[e.u], bv = sb.bump_of[e.v];
        integral += e.w * theta_expectation(sb.magnitude[e.u], sb.magnitude[e.v], bu == bv && bu >= 0,
                                            bu < 0, bv < 0);
    }

    std::vector<int> unioned;
    for (const auto& a : sets) unioned.insert(unioned.end(), a.begin(), a.end());
    std::sort(unioned.begin(), unioned.end());
    unioned.erase(std::unique(unioned.begin(), unioned.end()), unioned.end());

    const VertexMeasure nu = mu.marginal(m.n);
    rep.preconditions_ok = true;
    rep.integral = integral;
    rep.nu_union = nu.of(unioned);
    rep.lower_bound = (s / 4.0) * rep.nu_union;
    rep.d_lower_bound = integral;
    rep.holds = integral >= rep.lower_bound - 1e-9;
    return rep;
}

bool certificate_check(const ExpansionCertificate& cert, const MetricSpace& m,
                       const VertexMeasure& nu, int s, double T) {
    const auto& f = cert.f_vertices;
    if (f.empty()) return false;
    if (!(nu.of(f) > 0)) return false;
    if (!(m.set_diameter(f) >= T)) return false;

    const Graph G = proximity_graph(m, s);
    std::vector<char> in_f(m.n, 0);
    for (int v : f) in_f[v] = 1;

    auto violates = [&](const std::vector<int>& a) {
        if (a.empty() || !set_diameter_below(m, a, T)) return false;
        const double bd_mass = nu.of(boundary_within(G, in_f, a));
        return expansion_qualifies(bd_mass, nu.of(a), cert.phi);
    };

    if (cert.scope == "exhaustive") {
        const int k = static_cast<int>(f.size());
        if (k > 20) throw std::invalid_argument("certificate_check: exhaustive scope limited to 20 vertices");
        std::vector<int> a;
        for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
            a.clear();
            for (int i = 0; i < k; ++i)
                if (mask & (1u << i)) a.push_back(f[i]);
            if (violates(a)) return false;
        }
        return true;
    }

    Strategy strat = Strategy::candidate_family;
    if (cert.scope == "candidate-family:balls") strat = Strategy::balls;
    else if (cert.scope == "candidate-family:sweep") strat = Strategy::sweep;
    bool ok = true;
    for_each_heuristic_candidate(m, f, strat, [&](const std::vector<int>& a) {
        if (ok && violates(a)) ok = false;
    });
    return ok;
}

}  // namespace coarse
