#include "coarse/metric.hpp"

#include <algorithm>
#include <stdexcept>

#include "coarse/rng.hpp"

namespace coarse {

int MetricSpace::diameter() const {
    return *std::max_element(d.begin(), d.end());
}

int MetricSpace::set_diameter(const std::vector<int>& pts) const {
    if (pts.empty()) return -1;
    int best = 0;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, dist(pts[i], pts[j]));
    return best;
}

int MetricSpace::dist_to_set(int x, const std::vector<int>& pts) const {
    if (pts.empty()) return -1;
    int best = dist(x, pts[0]);
    for (int p : pts) best = std::min(best, dist(x, p));
    return best;
}

int MetricSpace::set_distance(const std::vector<int>& a, const std::vector<int>& b) const {
    if (a.empty() || b.empty()) throw std::invalid_argument("set_distance: empty set");
    int best = dist(a[0], b[0]);
    for (int x : a)
        for (int y : b) best = std::min(best, dist(x, y));
    return best;
}

MetricSpace metric_of(const Graph& g) {
    MetricSpace m;
    m.n = g.n;
    m.d.assign(static_cast<size_t>(g.n) * g.n, 0);
    for (int s = 0; s < g.n; ++s) {
        auto row = bfs_distances(g, s);
        for (int v = 0; v < g.n; ++v) {
            if (row[v] < 0) throw std::invalid_argument("metric_of: graph is disconnected");
            m.d[static_cast<size_t>(s) * g.n + v] = row[v];
        }
    }
    return m;
}

void validate_metric(const MetricSpace& m, std::uint64_t sample_seed) {
    const int n = m.n;
    if (n < 1) throw std::invalid_argument("metric: n must be >= 1");
    for (int u = 0; u < n; ++u) {
        if (m.dist(u, u) != 0) throw std::invalid_argument("metric: nonzero diagonal");
        for (int v = 0; v < n; ++v) {
            if (m.dist(u, v) != m.dist(v, u)) throw std::invalid_argument("metric: asymmetric");
            if (u != v && m.dist(u, v) < 1) throw std::invalid_argument("metric: off-diagonal < 1");
        }
    }
    auto check_triple = [&](int a, int b, int c) {
        if (m.dist(a, c) > m.dist(a, b) + m.dist(b, c))
            throw std::invalid_argument("metric: triangle inequality fails");
    };
    if (n <= 64) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) check_triple(a, b, c);
    } else {
        Rng rng(sample_seed);
        for (int k = 0; k < 200000; ++k)
            check_triple(static_cast<int>(rng.below(n)), static_cast<int>(rng.below(n)),
                         static_cast<int>(rng.below(n)));
    }
}

Graph proximity_graph(const MetricSpace& m, int s) {
    if (s < 1) throw std::invalid_argument("proximity_graph: s must be >= 1");
    std::vector<Edge> e;
    for (int u = 0; u < m.n; ++u)
        for (int v = u + 1; v < m.n; ++v) {
            int duv = m.dist(u, v);
            if (duv > 0 && duv <= s) e.emplace_back(u, v);
        }
    return Graph::from_edges(m.n, std::move(e));
}

MetricSpace restrict_metric(const MetricSpace& m, const std::vector<int>& pts) {
    MetricSpace r;
    r.n = static_cast<int>(pts.size());
    r.d.assign(static_cast<size_t>(r.n) * r.n, 0);
    for (int i = 0; i < r.n; ++i)
        for (int j = 0; j < r.n; ++j) r.d[static_cast<size_t>(i) * r.n + j] = m.dist(pts[i], pts[j]);
    return r;
}

}  // namespace coarse
