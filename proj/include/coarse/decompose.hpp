#pragma once

#include <vector>

#include "coarse/graph.hpp"
#include "coarse/measure.hpp"

namespace coarse {

enum class CutVariant { residue, annulus };

// A residue offset r_j lives in {1,...,delta} and deletes the congruence
// class of r_j mod delta. When r_j == delta that class is 0, which contains
// the component leader itself (distance 0); whether the leader is really
// meant to be deletable is a convention, so both readings are available.
enum class ZeroResidue { deletable, kept };

struct Component {
    int leader = 0;                // least vertex id in the component
    std::vector<int> vertices;     // sorted ascending
};

struct Decomposition {
    int delta = 0;
    int rounds = 0;
    CutVariant variant = CutVariant::residue;
    std::vector<std::vector<int>> offsets;  // residue: one entry per round;
                                            // annulus: alpha per component, per round
    std::vector<std::vector<int>> deleted;  // per round, sorted
    std::vector<Component> components;      // final survivors, ordered by leader
    std::vector<int> leader_of;             // per vertex; -1 when deleted
};

struct RoundCut {
    std::vector<int> deleted;
    std::vector<Component> components;
};

// One residue round over the subgraph induced on `live`: within each
// component, distances are measured from its leader in the component's own
// induced subgraph; vertices whose leader-distance is congruent to
// offset (mod delta) are deleted.
RoundCut residue_round(const Graph& g, const std::vector<int>& live, int delta, int offset,
                       ZeroResidue zr = ZeroResidue::deletable);

// `rounds` residue rounds, one shared offset per round (lambda).
Decomposition kpr_decompose(const Graph& g, int delta, int rounds, const std::vector<int>& lambda,
                            ZeroResidue zr = ZeroResidue::deletable);

// (r-1) * (4(r+1)delta + 1); the component-diameter bound for graphs with no
// K_r minor cut for r rounds at scale delta. Requires r >= 2.
long long kpr_diameter_bound(int delta, int r);

// Induced diameter of a connected component (distances inside the induced
// subgraph).
int component_induced_diameter(const Graph& g, const std::vector<int>& comp);

struct AnnulusCut {
    std::vector<int> deleted;
    int alpha = 0;
};

// One measure-aware annulus round on component X: deletes vertices whose
// center-distance d satisfies (d - alpha) mod (t + 2s) in {1,...,2s}, with
// alpha chosen over {0,...,delta-1} to minimize the deleted nu-mass (ties to
// the smallest alpha). Distances are measured inside X.
AnnulusCut annulus_round(const Graph& g, const std::vector<int>& component, const VertexMeasure& nu,
                         int s, int t, int center);

// r rounds of annulus cuts, each component cut from its leader with its own
// best alpha. Guarantees surviving mass >= (t/(2s+t))^r of the total.
Decomposition annulus_decompose(const Graph& g, const VertexMeasure& nu, int s, int t, int rounds);

struct CutParameters {
    int s = 0;
    long long t = 0;
    long long n = 0;
    long long delta = 0;  // t + 2s
    double d_constant = 0;
    int r = 0;
    double phi = 0;  // s/(4D) - 2
};

// (phi(D,s)+1) * (t/(2s+t))^r > 1, evaluated exactly in integer arithmetic
// where the binary representation of d_constant permits.
bool condition_vv(int s, long long t, int r, double d_constant);

// (r-1)(4(r+1)t + 1) < n - s/2, exact.
bool condition_vvv(int s, long long t, long long n, int r);

// Smallest s > 8D (increased further if needed), then smallest t satisfying
// the expansion condition, then smallest n satisfying the diameter condition
// with 2n > s. The output re-verifies both inequalities.
CutParameters parameter_search(double d_constant, int r);

// Partition, component connectivity, and leader minimality; throws on any
// violation.
void validate_decomposition(const Decomposition& dec, const Graph& g);

}  // namespace coarse
