#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ccon/geometry.hpp"
#include "ccon/rng.hpp"

namespace ccon {

// Directed edge (from, to); node ids are 0-based.
using Edge = std::pair<std::size_t, std::size_t>;

enum class ScheduleKind : std::uint8_t { Static, Periodic };

const char* to_string(ScheduleKind k);

// Digraph whose edge set depends on the round t. Static graphs have a single
// edge set; periodic graphs cycle through a list of them.
class TimeVaryingDigraph {
public:
    TimeVaryingDigraph() = default;

    static TimeVaryingDigraph make_static(std::size_t n, std::vector<Edge> edges);
    static TimeVaryingDigraph make_periodic(std::size_t n, std::vector<std::vector<Edge>> edge_sets);

    std::size_t n() const { return n_; }
    ScheduleKind kind() const { return kind_; }
    std::size_t period() const { return sets_.size(); }
    std::size_t phase(std::size_t t) const { return t % sets_.size(); }

    // Sorted, duplicate-free edges of round t.
    const std::vector<Edge>& edges(std::size_t t) const { return sets_[phase(t)].edges; }
    // Sorted in-neighbors of node i at round t.
    const std::vector<std::size_t>& in_neighbors(std::size_t i, std::size_t t) const
    {
        return sets_[phase(t)].in[i];
    }
    const std::vector<std::size_t>& out_neighbors(std::size_t i, std::size_t t) const
    {
        return sets_[phase(t)].out[i];
    }
    std::size_t max_in_degree() const;

private:
    struct Phase {
        std::vector<Edge> edges;
        std::vector<std::vector<std::size_t>> in;
        std::vector<std::vector<std::size_t>> out;
    };

    static Phase build(std::size_t n, std::vector<Edge> edges);

    std::size_t n_ = 0;
    ScheduleKind kind_ = ScheduleKind::Static;
    std::vector<Phase> sets_;
};

// Adds both (i, j) and (j, i) for every pair.
std::vector<Edge> bidirected(const std::vector<std::pair<std::size_t, std::size_t>>& undirected);

struct GraphMetrics {
    bool strongly_connected = false;
    std::optional<std::size_t> diameter; // empty when not strongly connected
};

GraphMetrics graph_metrics(const TimeVaryingDigraph& g, std::size_t t = 0);

// BFS hop distances from s over the edges of round t; unreachable nodes get
// SIZE_MAX.
std::vector<std::size_t> bfs_distances(const TimeVaryingDigraph& g, std::size_t s, std::size_t t = 0);

// The union of any `window` consecutive edge sets is strongly connected.
bool is_jointly_strongly_connected(const TimeVaryingDigraph& g, std::size_t window);

TimeVaryingDigraph gen_line(std::size_t n);

inline constexpr std::size_t kErdosRenyiRetries = 100;

double erdos_renyi_probability(std::size_t n, double epsilon);
TimeVaryingDigraph gen_erdos_renyi(std::size_t n, double epsilon, Rng& rng,
                                   std::size_t retries = kErdosRenyiRetries);

struct GeometricGraph {
    TimeVaryingDigraph graph;
    std::vector<Point2> positions;
    double radius = 0.0;
};

// Longest edge of the Euclidean minimum spanning tree.
double mst_bottleneck(const std::vector<Point2>& pts);

// Static graph joining every pair at distance <= radius.
TimeVaryingDigraph disk_graph(const std::vector<Point2>& pts, double radius);

GeometricGraph gen_random_geometric_detailed(std::size_t n, Rng& rng);
TimeVaryingDigraph gen_random_geometric(std::size_t n, Rng& rng);

} // namespace ccon
