#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace coarse {

using Edge = std::pair<int, int>;

// Finite simple undirected graph over vertex ids 0..n-1. Vertex ids double as
// the enumeration order used by the cutting procedures: the least id in a set
// is its leader.
struct Graph {
    int n = 0;
    std::vector<Edge> edges;              // normalized u < v, sorted
    std::vector<std::vector<int>> adj;    // sorted neighbor lists
    std::optional<int> minor_order;       // excluded-minor order when known by construction

    // Validates ids, rejects loops and duplicate edges, builds adjacency.
    static Graph from_edges(int n, std::vector<Edge> e);

    int m() const { return static_cast<int>(edges.size()); }
    int degree(int v) const { return static_cast<int>(adj[v].size()); }
};

// Unweighted shortest-path distances from source; -1 marks unreachable vertices.
std::vector<int> bfs_distances(const Graph& g, int source);

bool is_connected(const Graph& g);

// Connected components of the subgraph induced on `live` (sorted ids).
// Each component is sorted ascending (front() is its leader) and components
// are ordered by leader.
std::vector<std::vector<int>> induced_components(const Graph& g, const std::vector<int>& live);

// BFS distances from `source` measured inside the subgraph induced on `comp`.
// Indexed by vertex id; -1 outside the component.
std::vector<int> induced_bfs(const Graph& g, const std::vector<int>& comp, int source);

// Multi-source BFS distance to `sources` in the whole graph; -1 everywhere
// when `sources` is empty.
std::vector<int> distance_to_set(const Graph& g, const std::vector<int>& sources);

// {v not in a : v adjacent to some u in a}, sorted.
std::vector<int> vertex_boundary(const Graph& g, const std::vector<int>& a);

enum class Family { path, cycle, grid2d, random_tree, series_parallel, hypercube, random_regular };

Family family_from_string(const std::string& name);
std::string family_to_string(Family f);

// Excluded-minor order attached to families that are minor-free by
// construction (forest-like -> 3, series-parallel -> 4, planar grid -> 5).
std::optional<int> excluded_minor_order(Family f);

struct FamilySpec {
    Family family = Family::path;
    int n = 0;                 // path, cycle, random_tree, series_parallel, random_regular
    int rows = 0, cols = 0;    // grid2d
    int dim = 0;               // hypercube
    int degree = 0;            // random_regular
    std::uint64_t seed = 0;
};

// Deterministic under (spec, seed); output is always connected.
Graph generate(const FamilySpec& spec);

}  // namespace coarse
