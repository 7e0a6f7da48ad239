#include "coarse/measure.hpp"

#include <cmath>
#include <stdexcept>

namespace coarse {

VertexMeasure VertexMeasure::uniform(int n) {
    VertexMeasure m;
    m.weights.assign(n, 1.0 / n);
    m.total = 1.0;
    return m;
}

VertexMeasure VertexMeasure::zero(int n) {
    VertexMeasure m;
    m.weights.assign(n, 0.0);
    m.total = 0.0;
    return m;
}

VertexMeasure VertexMeasure::from_weights(std::vector<double> w) {
    VertexMeasure m;
    m.total = 0;
    for (double x : w) {
        if (x < 0) throw std::invalid_argument("vertex measure: negative weight");
        m.total += x;
    }
    m.weights = std::move(w);
    return m;
}

double VertexMeasure::of(const std::vector<int>& a) const {
    double s = 0;
    for (int v : a) s += weights.at(v);
    return s;
}

double measure_restrict(const VertexMeasure& nu, const std::vector<int>& a) {
    return nu.of(a);
}

double PairMeasure::total() const {
    double s = 0;
    for (const auto& e : support) s += e.w;
    return s;
}

VertexMeasure PairMeasure::marginal(int n) const {
    VertexMeasure m = VertexMeasure::zero(n);
    for (const auto& e : support) {
        m.weights.at(e.u) += e.w;
        m.total += e.w;
    }
    return m;
}

void PairMeasure::validate(const MetricSpace& m) const {
    double s = 0;
    for (const auto& e : support) {
        if (e.w <= 0) throw std::invalid_argument("pair measure: nonpositive weight");
        if (m.dist(e.u, e.v) < separation)
            throw std::invalid_argument("pair measure: support pair closer than separation");
        s += e.w;
    }
    if (std::abs(s - 1.0) > 1e-12) throw std::invalid_argument("pair measure: weights must sum to 1");
}

PairMeasure far_pair_measure(const MetricSpace& m, int min_dist) {
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < m.n; ++u)
        for (int v = 0; v < m.n; ++v)
            if (u != v && m.dist(u, v) >= min_dist) pairs.emplace_back(u, v);
    if (pairs.empty()) throw std::invalid_argument("far_pair_measure: no pair at the requested distance");
    PairMeasure mu;
    mu.separation = min_dist;
    const double w = 1.0 / static_cast<double>(pairs.size());
    for (auto [u, v] : pairs) mu.support.push_back({u, v, w});
    return mu;
}

}  // namespace coarse
