#pragma once

#include <vector>

#include "coarse/metric.hpp"

namespace coarse {

// Nonnegative weights on vertices.
struct VertexMeasure {
    std::vector<double> weights;
    double total = 0;

    static VertexMeasure uniform(int n);
    static VertexMeasure zero(int n);
    static VertexMeasure from_weights(std::vector<double> w);

    int size() const { return static_cast<int>(weights.size()); }
    double of(const std::vector<int>& a) const;
};

// Sum of weights over a vertex set.
double measure_restrict(const VertexMeasure& nu, const std::vector<int>& a);

// Probability measure on ordered vertex pairs, supported on pairs at
// distance >= separation. Stored sparsely.
struct PairMeasure {
    struct Entry {
        int u, v;
        double w;
    };
    std::vector<Entry> support;
    int separation = 0;

    double total() const;

    // First-coordinate marginal: nu(A) = mu(A x M).
    VertexMeasure marginal(int n) const;

    // Weights positive and summing to 1 (1e-12), every support pair at
    // distance >= separation.
    void validate(const MetricSpace& m) const;
};

// Uniform measure over all ordered pairs at distance >= min_dist; throws when
// no pair qualifies.
PairMeasure far_pair_measure(const MetricSpace& m, int min_dist);

}  // namespace coarse
