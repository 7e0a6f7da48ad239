#include "coarse/graph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "coarse/rng.hpp"

namespace coarse {

Graph Graph::from_edges(int n, std::vector<Edge> e) {
    if (n < 1) throw std::invalid_argument("graph: n must be >= 1");
    for (auto& [u, v] : e) {
        if (u < 0 || u >= n || v < 0 || v >= n) throw std::invalid_argument("graph: vertex id out of range");
        if (u == v) throw std::invalid_argument("graph: loops are not allowed");
        if (u > v) std::swap(u, v);
    }
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end())
        throw std::invalid_argument("graph: duplicate edge");

    Graph g;
    g.n = n;
    g.edges = std::move(e);
    g.adj.assign(n, {});
    for (const auto& [u, v] : g.edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
    return g;
}

std::vector<int> bfs_distances(const Graph& g, int source) {
    if (source < 0 || source >= g.n) throw std::invalid_argument("bfs: source out of range");
    std::vector<int> dist(g.n, -1);
    std::queue<int> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : g.adj[v]) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
        }
    }
    return dist;
}

bool is_connected(const Graph& g) {
    auto d = bfs_distances(g, 0);
    return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

std::vector<std::vector<int>> induced_components(const Graph& g, const std::vector<int>& live) {
    std::vector<char> in_live(g.n, 0);
    for (int v : live) in_live[v] = 1;
    std::vector<char> seen(g.n, 0);
    std::vector<std::vector<int>> comps;
    for (int s : live) {
        if (seen[s]) continue;
        std::vector<int> comp;
        std::queue<int> q;
        seen[s] = 1;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            comp.push_back(v);
            for (int w : g.adj[v]) {
                if (in_live[w] && !seen[w]) {
                    seen[w] = 1;
                    q.push(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    // `live` is sorted, so components already come out ordered by leader.
    return comps;
}

std::vector<int> induced_bfs(const Graph& g, const std::vector<int>& comp, int source) {
    std::vector<char> in_comp(g.n, 0);
    for (int v : comp) in_comp[v] = 1;
    if (source < 0 || source >= g.n || !in_comp[source])
        throw std::invalid_argument("induced_bfs: source not in component");
    std::vector<int> dist(g.n, -1);
    std::queue<int> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : g.adj[v]) {
            if (in_comp[w] && dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
        }
    }
    return dist;
}

std::vector<int> distance_to_set(const Graph& g, const std::vector<int>& sources) {
    std::vector<int> dist(g.n, -1);
    if (sources.empty()) return dist;
    std::queue<int> q;
    for (int s : sources) {
        if (dist[s] == 0) continue;
        dist[s] = 0;
        q.push(s);
    }
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : g.adj[v]) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
        }
    }
    return dist;
}

std::vector<int> vertex_boundary(const Graph& g, const std::vector<int>& a) {
    std::vector<char> in_a(g.n, 0);
    for (int v : a) {
        if (v < 0 || v >= g.n) throw std::invalid_argument("vertex_boundary: id out of range");
        in_a[v] = 1;
    }
    std::vector<char> hit(g.n, 0);
    std::vector<int> out;
    for (int v : a)
        for (int w : g.adj[v])
            if (!in_a[w] && !hit[w]) {
                hit[w] = 1;
                out.push_back(w);
            }
    std::sort(out.begin(), out.end());
    return out;
}

Family family_from_string(const std::string& name) {
    if (name == "path") return Family::path;
    if (name == "cycle") return Family::cycle;
    if (name == "grid2d") return Family::grid2d;
    if (name == "random_tree") return Family::random_tree;
    if (name == "series_parallel") return Family::series_parallel;
    if (name == "hypercube") return Family::hypercube;
    if (name == "random_regular") return Family::random_regular;
    throw std::invalid_argument("unknown family: " + name);
}

std::string family_to_string(Family f) {
    switch (f) {
        case Family::path: return "path";
        case Family::cycle: return "cycle";
        case Family::grid2d: return "grid2d";
        case Family::random_tree: return "random_tree";
        case Family::series_parallel: return "series_parallel";
        case Family::hypercube: return "hypercube";
        case Family::random_regular: return "random_regular";
    }
    return "?";
}

std::optional<int> excluded_minor_order(Family f) {
    switch (f) {
        case Family::path:
        case Family::random_tree: return 3;
        case Family::cycle:
        case Family::series_parallel: return 4;
        case Family::grid2d: return 5;
        default: return std::nullopt;
    }
}

namespace {

Graph make_path(int n) {
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph::from_edges(n, std::move(e));
}

Graph make_cycle(int n) {
    if (n < 3) throw std::invalid_argument("cycle: n must be >= 3");
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    e.emplace_back(0, n - 1);
    return Graph::from_edges(n, std::move(e));
}

Graph make_grid(int rows, int cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("grid2d: dims must be >= 1");
    auto id = [cols](int r, int c) { return r * cols + c; };
    std::vector<Edge> e;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) e.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) e.emplace_back(id(r, c), id(r + 1, c));
        }
    return Graph::from_edges(rows * cols, std::move(e));
}

Graph make_random_tree(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_tree: n must be >= 1");
    Rng rng(seed);
    std::vector<Edge> e;
    for (int i = 1; i < n; ++i) e.emplace_back(static_cast<int>(rng.below(i)), i);
    return Graph::from_edges(n, std::move(e));
}

// Random series/parallel compositions starting from a single edge: a series
// step subdivides an existing edge, a parallel step attaches a new vertex to
// both endpoints of an existing edge (a length-2 parallel path, keeping the
// graph simple). Both steps preserve treewidth <= 2, so the result has no
// K4 minor.
Graph make_series_parallel(int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("series_parallel: n must be >= 2");
    Rng rng(seed);
    std::vector<Edge> e{{0, 1}};
    int next = 2;
    while (next < n) {
        auto idx = rng.below(e.size());
        auto [u, v] = e[idx];
        int w = next++;
        if (rng.coin()) {
            e[idx] = {u, w};  // series: split u-v into u-w-v
            e.emplace_back(w, v);
        } else {
            e.emplace_back(u, w);  // parallel path u-w-v alongside u-v
            e.emplace_back(w, v);
        }
    }
    return Graph::from_edges(n, std::move(e));
}

Graph make_hypercube(int dim) {
    if (dim < 1 || dim > 20) throw std::invalid_argument("hypercube: dim must be in [1, 20]");
    int n = 1 << dim;
    std::vector<Edge> e;
    for (int v = 0; v < n; ++v)
        for (int b = 0; b < dim; ++b) {
            int w = v ^ (1 << b);
            if (v < w) e.emplace_back(v, w);
        }
    return Graph::from_edges(n, std::move(e));
}

// Pairing model with rejection of loops, multi-edges, and disconnected
// outcomes. Deterministic for a fixed seed: each retry continues the same
// stream.
Graph make_random_regular(int n, int d, std::uint64_t seed) {
    if (n < 2 || d < 1 || d >= n) throw std::invalid_argument("random_regular: need 2 <= d+1 <= n");
    if ((static_cast<long long>(n) * d) % 2 != 0)
        throw std::invalid_argument("random_regular: n*degree must be even");
    Rng rng(seed);
    const int stubs = n * d;
    std::vector<int> perm(stubs);
    const int max_retries = 1000;
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        for (int i = 0; i < stubs; ++i) perm[i] = i / d;
        for (int i = stubs - 1; i > 0; --i) {
            int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
            std::swap(perm[i], perm[j]);
        }
        std::vector<Edge> e;
        e.reserve(stubs / 2);
        bool ok = true;
        for (int i = 0; i < stubs && ok; i += 2) {
            int u = perm[i], v = perm[i + 1];
            if (u == v) ok = false;
            if (u > v) std::swap(u, v);
            e.emplace_back(u, v);
        }
        if (!ok) continue;
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end()) continue;
        Graph g = Graph::from_edges(n, std::move(e));
        if (is_connected(g)) return g;
    }
    throw std::runtime_error("random_regular: no connected simple outcome within retry budget");
}

}  // namespace

Graph generate(const FamilySpec& spec) {
    Graph g;
    switch (spec.family) {
        case Family::path: g = make_path(spec.n); break;
        case Family::cycle: g = make_cycle(spec.n); break;
        case Family::grid2d: g = make_grid(spec.rows, spec.cols); break;
        case Family::random_tree: g = make_random_tree(spec.n, spec.seed); break;
        case Family::series_parallel: g = make_series_parallel(spec.n, spec.seed); break;
        case Family::hypercube: g = make_hypercube(spec.dim); break;
        case Family::random_regular: g = make_random_regular(spec.n, spec.degree, spec.seed); break;
    }
    g.minor_order = excluded_minor_order(spec.family);
    if (g.n > 1 && !is_connected(g)) throw std::runtime_error("generate: output not connected");
    return g;
}

}  // namespace coarse
