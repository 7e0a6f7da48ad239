#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coarse/embed.hpp"
#include "coarse/measure.hpp"
#include "coarse/metric.hpp"

namespace coarse {

// Empirical compression envelopes of an embedding: rho1(t) is the minimum
// embedded distance over pairs at graph distance >= t, rho2(t) the maximum
// over pairs at distance <= t. Both are monotone by construction and
// rho2(t) <= 3t is asserted exactly.
struct DistortionProfile {
    int n = 0;
    int diameter = 0;
    std::vector<double> rho1;  // index t-1 for t = 1..diameter
    std::vector<double> rho2;

    double rho1_at(int t) const { return rho1.at(t - 1); }
    double rho2_at(int t) const { return rho2.at(t - 1); }
};

DistortionProfile contract_profile(const L1Point& p, const MetricSpace& m);

// s/(4D) - 2; negative values mean s is below the admissible range.
double phi_threshold(double d_constant, int s);

// Shared qualifying test: boundary mass <= phi * set mass, evaluated with one
// canonical expression so the process, oracle, and certificate checker agree
// bit-for-bit.
bool expansion_qualifies(double boundary_mass, double set_mass, double phi);

enum class Strategy { exhaustive, balls, sweep, candidate_family };

Strategy strategy_from_string(const std::string& name);
std::string strategy_to_string(Strategy s);

struct ExhaustStep {
    std::vector<int> removed;   // A_i
    std::vector<int> boundary;  // delta_{F_i} A_i
    double ratio = 0;           // boundary mass / set mass (0 when set mass is 0)
    double set_mass = 0;
};

struct ExhaustionTrace {
    int s = 0;
    double diameter_threshold = 0;  // T
    double phi = 0;
    std::string strategy;
    std::vector<ExhaustStep> steps;
    std::vector<std::vector<int>> surviving;  // F before each step, then the final F
    std::vector<int> final_set;               // terminal low-diameter set A_p (may be empty)
    std::string terminal;                     // "diameter-below-threshold" or "emptied"
};

struct ExpansionCertificate {
    std::vector<int> f_vertices;
    double phi = 0;
    int s = 0;
    double diameter_threshold = 0;  // T
    std::string scope;              // "exhaustive" or "candidate-family:balls+sweep" etc.
    int steps_before = 0;           // removals performed before certification
    std::vector<ExhaustStep> steps;  // the removal history leading to F
    long long checked_sets = 0;
    double min_ratio = 0;
    std::vector<int> min_ratio_set;
};

using ExhaustResult = std::variant<ExpansionCertificate, ExhaustionTrace>;

// The exhaustion process on the proximity graph G(m, s): while the surviving
// set F has diameter >= T, look for a subset A of diameter < T with
// nu(boundary) <= phi * nu(A); remove A plus its boundary when found,
// certify F when the strategy scope finds none. Once diam(F) < T the
// remaining set terminates the trace.
ExhaustResult exhaust(const MetricSpace& m, const VertexMeasure& nu, int s, double T, double phi,
                      Strategy strategy);

struct MinExpansion {
    bool found = false;
    std::vector<int> set;
    std::vector<int> boundary;
    double ratio = 0;
    double set_mass = 0;
};

// Exact minimizer of nu(boundary)/nu(A) over nonempty A of diameter < T with
// nu(A) > 0, inside `within` (all points when omitted). Ties prefer the
// lexicographically smallest vertex set. Requires |within| <= 20.
MinExpansion brute_force_min_expansion(const MetricSpace& m, const VertexMeasure& nu, int s, double T,
                                       const std::vector<int>* within = nullptr);

// Every pair of removed pieces (including the terminal set) must be at
// mutual distance >= s; false indicates an implementation bug.
bool check_separation(const ExhaustionTrace& trace, const MetricSpace& m, int s);

// Signed bump family around pairwise s-separated sets: at x the active bump
// j(x) (if any) contributes theta_j * (s/2 - dist(x, A_j)).
struct SignedBumps {
    int s = 0;
    std::vector<int> bump_of;       // -1 when x is s/2-far from every set
    std::vector<double> magnitude;  // s/2 - dist(x, A_j), else 0
    size_t count = 0;

    double eval(const std::vector<int>& theta, int x) const;
};

SignedBumps signed_bumps(const MetricSpace& m, const std::vector<std::vector<int>>& sets, int s);

struct PoincareReport {
    bool preconditions_ok = false;
    std::string skip_reason;
    std::vector<std::vector<int>> sets;  // the partition pieces A_j
    int s = 0;
    int separation = 0;
    double integral = 0;       // I: exact sign expectation integrated against mu
    double nu_union = 0;       // nu of the union of the sets
    double lower_bound = 0;    // L = (s/4) * nu_union
    double d_lower_bound = 0;  // I itself (the map into L1(Theta) is 1-Lipschitz)
    bool holds = false;        // I >= L - 1e-9
};

// Exact evaluation of the displacement integral of the signed-bump family
// against mu, compared with the (s/4) * nu(union) lower bound. Precondition
// violations are reported and skipped rather than failed.
PoincareReport poincare_test(const MetricSpace& m, const PairMeasure& mu,
                             const std::vector<std::vector<int>>& sets, int s);

// Independent re-verification of a certificate: nonempty F with positive
// mass and diameter >= T, and no qualifying subset within the declared scope.
bool certificate_check(const ExpansionCertificate& cert, const MetricSpace& m,
                       const VertexMeasure& nu, int s, double T);

}  // namespace coarse
