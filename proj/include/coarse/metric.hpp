#pragma once

#include <vector>

#include "coarse/graph.hpp"

namespace coarse {

// Finite metric space over points 0..n-1 with integer distances (graph
// metrics with unit edge lengths).
struct MetricSpace {
    int n = 0;
    std::vector<int> d;  // row-major n*n

    int dist(int u, int v) const { return d[static_cast<size_t>(u) * n + v]; }

    int diameter() const;

    // Max pairwise distance within pts (ambient metric); 0 for a singleton,
    // -1 for the empty set.
    int set_diameter(const std::vector<int>& pts) const;

    // Min distance from x to the set; -1 for the empty set.
    int dist_to_set(int x, const std::vector<int>& pts) const;

    // Min distance between two nonempty sets.
    int set_distance(const std::vector<int>& a, const std::vector<int>& b) const;
};

// All-pairs shortest-path metric of a connected graph; throws on
// disconnected input.
MetricSpace metric_of(const Graph& g);

// Throws unless dist is symmetric, zero exactly on the diagonal, >= 1 off it,
// and satisfies the triangle inequality (exhaustive for n <= 64, sampled
// above that).
void validate_metric(const MetricSpace& m, std::uint64_t sample_seed = 1);

// G(m, s): edge (u, v) iff 0 < d(u, v) <= s. May be disconnected.
Graph proximity_graph(const MetricSpace& m, int s);

// Sub-metric on pts; point i of the result is pts[i].
MetricSpace restrict_metric(const MetricSpace& m, const std::vector<int>& pts);

}  // namespace coarse
