#include "ccon/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "ccon/errors.hpp"

namespace ccon {

const char* to_string(ScheduleKind k)
{
    return k == ScheduleKind::Static ? "STATIC" : "PERIODIC";
}

TimeVaryingDigraph::Phase TimeVaryingDigraph::build(std::size_t n, std::vector<Edge> edges)
{
    for (auto [i, j] : edges) {
        if (i >= n || j >= n)
            throw PreconditionError("digraph edge references a node outside 0..n-1");
        if (i == j)
            throw PreconditionError("digraph edge is a self-loop");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    Phase ph;
    ph.in.resize(n);
    ph.out.resize(n);
    for (auto [i, j] : edges) {
        ph.out[i].push_back(j);
        ph.in[j].push_back(i);
    }
    for (auto& v : ph.in)
        std::sort(v.begin(), v.end());
    ph.edges = std::move(edges);
    return ph;
}

TimeVaryingDigraph TimeVaryingDigraph::make_static(std::size_t n, std::vector<Edge> edges)
{
    if (n == 0)
        throw PreconditionError("digraph needs at least one node");
    TimeVaryingDigraph g;
    g.n_ = n;
    g.kind_ = ScheduleKind::Static;
    g.sets_.push_back(build(n, std::move(edges)));
    return g;
}

TimeVaryingDigraph TimeVaryingDigraph::make_periodic(std::size_t n, std::vector<std::vector<Edge>> edge_sets)
{
    if (n == 0)
        throw PreconditionError("digraph needs at least one node");
    if (edge_sets.empty())
        throw PreconditionError("periodic schedule needs at least one edge set");
    TimeVaryingDigraph g;
    g.n_ = n;
    g.kind_ = ScheduleKind::Periodic;
    for (auto& e : edge_sets)
        g.sets_.push_back(build(n, std::move(e)));
    return g;
}

std::size_t TimeVaryingDigraph::max_in_degree() const
{
    std::size_t m = 0;
    for (const auto& ph : sets_)
        for (const auto& v : ph.in)
            m = std::max(m, v.size());
    return m;
}

std::vector<Edge> bidirected(const std::vector<std::pair<std::size_t, std::size_t>>& undirected)
{
    std::vector<Edge> out;
    out.reserve(2 * undirected.size());
    for (auto [i, j] : undirected) {
        out.emplace_back(i, j);
        out.emplace_back(j, i);
    }
    return out;
}

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

std::vector<std::size_t> bfs(const std::vector<std::vector<std::size_t>>& adj, std::size_t s)
{
    std::vector<std::size_t> dist(adj.size(), kUnreached);
    std::deque<std::size_t> q{s};
    dist[s] = 0;
    while (!q.empty()) {
        auto u = q.front();
        q.pop_front();
        for (auto v : adj[u])
            if (dist[v] == kUnreached) {
                dist[v] = dist[u] + 1;
                q.push_back(v);
            }
    }
    return dist;
}

bool strongly_connected(const std::vector<std::vector<std::size_t>>& out)
{
    const std::size_t n = out.size();
    std::vector<std::vector<std::size_t>> in(n);
    for (std::size_t i = 0; i < n; ++i)
        for (auto j : out[i])
            in[j].push_back(i);
    auto f = bfs(out, 0);
    auto b = bfs(in, 0);
    return std::none_of(f.begin(), f.end(), [](auto d) { return d == kUnreached; }) &&
           std::none_of(b.begin(), b.end(), [](auto d) { return d == kUnreached; });
}

} // namespace

std::vector<std::size_t> bfs_distances(const TimeVaryingDigraph& g, std::size_t s, std::size_t t)
{
    std::vector<std::vector<std::size_t>> out(g.n());
    for (std::size_t i = 0; i < g.n(); ++i)
        out[i] = g.out_neighbors(i, t);
    return bfs(out, s);
}

GraphMetrics graph_metrics(const TimeVaryingDigraph& g, std::size_t t)
{
    std::vector<std::vector<std::size_t>> out(g.n());
    for (std::size_t i = 0; i < g.n(); ++i)
        out[i] = g.out_neighbors(i, t);
    GraphMetrics m;
    std::size_t diam = 0;
    for (std::size_t s = 0; s < g.n(); ++s) {
        auto d = bfs(out, s);
        for (auto x : d) {
            if (x == kUnreached)
                return m;
            diam = std::max(diam, x);
        }
    }
    m.strongly_connected = true;
    m.diameter = diam;
    return m;
}

bool is_jointly_strongly_connected(const TimeVaryingDigraph& g, std::size_t window)
{
    if (window == 0)
        throw PreconditionError("is_jointly_strongly_connected: window must be positive");
    if (g.kind() != ScheduleKind::Static && g.kind() != ScheduleKind::Periodic)
        throw UnsupportedSchedule("joint connectivity is only decidable for periodic schedules");
    const std::size_t phases = g.kind() == ScheduleKind::Static ? 1 : g.period();
    for (std::size_t s = 0; s < phases; ++s) {
        std::vector<std::vector<std::size_t>> out(g.n());
        for (std::size_t k = 0; k < std::min(window, g.period()); ++k)
            for (auto [i, j] : g.edges(s + k))
                out[i].push_back(j);
        if (!strongly_connected(out))
            return false;
    }
    return true;
}

TimeVaryingDigraph gen_line(std::size_t n)
{
    if (n < 2)
        throw PreconditionError("gen_line: n >= 2 required");
    std::vector<std::pair<std::size_t, std::size_t>> und;
    for (std::size_t i = 0; i + 1 < n; ++i)
        und.emplace_back(i, i + 1);
    return TimeVaryingDigraph::make_static(n, bidirected(und));
}

double erdos_renyi_probability(std::size_t n, double epsilon)
{
    return std::min(1.0, (1.0 + epsilon) * std::log(static_cast<double>(n)) / static_cast<double>(n));
}

TimeVaryingDigraph gen_erdos_renyi(std::size_t n, double epsilon, Rng& rng, std::size_t retries)
{
    if (n < 2)
        throw PreconditionError("gen_erdos_renyi: n >= 2 required");
    if (!(epsilon > 0.0))
        throw PreconditionError("gen_erdos_renyi: epsilon > 0 required");
    std::bernoulli_distribution coin(erdos_renyi_probability(n, epsilon));
    for (std::size_t attempt = 0; attempt < retries; ++attempt) {
        std::vector<std::pair<std::size_t, std::size_t>> und;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (coin(rng))
                    und.emplace_back(i, j);
        auto g = TimeVaryingDigraph::make_static(n, bidirected(und));
        if (graph_metrics(g).strongly_connected)
            return g;
    }
    throw ConnectivityRetryExhausted("gen_erdos_renyi: no connected sample within the retry budget");
}

double mst_bottleneck(const std::vector<Point2>& pts)
{
    // Prim on the complete graph
    const std::size_t n = pts.size();
    if (n < 2)
        return 0.0;
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<bool> in(n, false);
    best[0] = 0.0;
    double longest = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t u = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!in[i] && (u == n || best[i] < best[u]))
                u = i;
        in[u] = true;
        longest = std::max(longest, best[u]);
        for (std::size_t i = 0; i < n; ++i)
            if (!in[i])
                best[i] = std::min(best[i], dist(pts[u], pts[i]));
    }
    return longest;
}

TimeVaryingDigraph disk_graph(const std::vector<Point2>& pts, double radius)
{
    std::vector<std::pair<std::size_t, std::size_t>> und;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (dist(pts[i], pts[j]) <= radius)
                und.emplace_back(i, j);
    return TimeVaryingDigraph::make_static(pts.size(), bidirected(und));
}

GeometricGraph gen_random_geometric_detailed(std::size_t n, Rng& rng)
{
    if (n < 2)
        throw PreconditionError("gen_random_geometric: n >= 2 required");
    std::uniform_real_distribution<double> u(0.0, 1.0);
    GeometricGraph out;
    out.positions.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double x = u(rng);
        out.positions.push_back({x, u(rng)});
    }
    out.radius = mst_bottleneck(out.positions);
    out.graph = disk_graph(out.positions, out.radius);
    return out;
}

TimeVaryingDigraph gen_random_geometric(std::size_t n, Rng& rng)
{
    return gen_random_geometric_detailed(n, rng).graph;
}

} // namespace ccon
