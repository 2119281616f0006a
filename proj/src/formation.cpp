#include "ccon/formation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ccon/consensus.hpp"
#include "ccon/errors.hpp"
#include "ccon/values.hpp"

namespace ccon {

const char* to_string(ShapeKind k)
{
    switch (k) {
    case ShapeKind::Line:
        return "LINE";
    case ShapeKind::Circle:
        return "CIRCLE";
    default:
        return "POINT";
    }
}

ShapeKind parse_shape_kind(const std::string& s)
{
    if (s == "POINT" || s == "point")
        return ShapeKind::Point;
    if (s == "LINE" || s == "line")
        return ShapeKind::Line;
    if (s == "CIRCLE" || s == "circle")
        return ShapeKind::Circle;
    throw ParseError("unknown shape: " + s);
}

std::vector<Disk> motion_constraint_set(Point2 p, std::span<const Point2> neighbors, double r_cmm)
{
    std::vector<Disk> out;
    out.reserve(neighbors.size());
    for (auto q : neighbors)
        out.push_back({0.5 * (p + q), 0.5 * r_cmm});
    return out;
}

namespace {

constexpr double kInsideTol = 1e-12;

bool in_disk(const Disk& d, Point2 x, double tol)
{
    return dist(x, d.center) <= d.radius + tol * std::max(1.0, d.radius);
}

// Largest t with p + t v inside the disk, given p inside.
double exit_parameter(const Disk& d, Point2 p, Point2 v)
{
    Point2 w = p - d.center;
    double a = dot(v, v);
    if (a == 0.0)
        return std::numeric_limits<double>::infinity();
    double b = dot(w, v);
    double c = dot(w, w) - d.radius * d.radius;
    double disc = b * b - a * c;
    if (disc < 0.0)
        return 0.0;
    // numerically stable larger root
    double s = std::sqrt(disc);
    double t = b <= 0.0 ? (-b + s) / a : -c / (b + s);
    return std::max(0.0, t);
}

} // namespace

Point2 fti(Point2 p, Point2 q, std::span<const Disk> Q)
{
    for (const auto& d : Q)
        if (!in_disk(d, p, kInsideTol))
            throw PNotInQ("fti: start point lies outside the constraint set");
    if (std::all_of(Q.begin(), Q.end(), [&](const Disk& d) { return in_disk(d, q, 0.0); }))
        return q;
    Point2 v = q - p;
    double t = 1.0;
    for (const auto& d : Q)
        t = std::min(t, exit_parameter(d, p, v));
    // Stop a hair short of the boundary so rounding cannot carry the point
    // across it.
    t = std::clamp(t * (1.0 - 1e-9), 0.0, 1.0);
    return p + t * v;
}

Shape target_set(std::span<const Point2> basis, ShapeKind kind)
{
    auto pts = distinct(basis);
    if (pts.empty())
        throw PreconditionError("target_set: empty basis");
    Shape s;
    s.kind = kind;
    switch (kind) {
    case ShapeKind::Point: {
        auto v = BallProblem().evaluate(pts);
        s.point = v.center;
        break;
    }
    case ShapeKind::Line: {
        auto v = StripeProblem(pts.size()).evaluate(pts);
        double mid = 0.5 * (v.lo + v.hi);
        s.point = mid * v.normal;
        s.dir = {-v.normal.y, v.normal.x};
        break;
    }
    case ShapeKind::Circle: {
        auto a = to_annulus(AnnulusProblem().evaluate(pts));
        s.point = a.center;
        s.radius = 0.5 * (a.r + a.R);
        break;
    }
    }
    return s;
}

Point2 closest_point_on_shape(Point2 p, const Shape& s)
{
    switch (s.kind) {
    case ShapeKind::Line:
        return s.point + dot(p - s.point, s.dir) * s.dir;
    case ShapeKind::Circle: {
        Point2 w = p - s.point;
        double len = norm(w);
        if (len == 0.0)
            return s.point + s.radius * Point2{1.0, 0.0};
        return s.point + (s.radius / len) * w;
    }
    default:
        return s.point;
    }
}

double distance_to_shape(Point2 p, const Shape& s)
{
    return dist(p, closest_point_on_shape(p, s));
}

std::vector<Point2> random_connected_cluster(std::size_t n, double r_cmm, Rng& rng)
{
    if (n == 0)
        return {};
    std::uniform_real_distribution<double> len(0.3 * r_cmm, 0.95 * r_cmm);
    std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
    std::vector<Point2> pts{{0.0, 0.0}};
    while (pts.size() < n) {
        std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
        Point2 base = pts[pick(rng)];
        double l = len(rng), th = ang(rng);
        pts.push_back(base + l * Point2{std::cos(th), std::sin(th)});
    }
    return pts;
}

namespace {

template <AbstractProblem P>
FormationTrace run_shape(const P& prob, const FormationConfig& cfg, std::uint64_t seed)
{
    using B = BasisOf<P>;
    const std::size_t n = cfg.positions.size();
    const auto& init = cfg.positions;

    FormationTrace tr;
    tr.n = n;
    tr.shape = cfg.shape;
    tr.halt_round.assign(n, std::nullopt);

    Rng ref_rng(derive_seed(seed, {0xfeedULL}));
    auto ref_basis = subex_lp(prob, init, singleton_basis(prob, init[0]), ref_rng);
    tr.reference = value_components(ref_basis.value);
    tr.reference_shape = target_set(ref_basis.elements, cfg.shape);

    std::vector<Rng> rngs;
    for (std::size_t i = 0; i < n; ++i)
        rngs.emplace_back(derive_seed(seed, {static_cast<std::uint64_t>(i)}));
    std::vector<B> bases;
    for (std::size_t i = 0; i < n; ++i)
        bases.push_back(singleton_basis(prob, init[i]));
    std::vector<Point2> pos = init;
    std::vector<bool> halted(n, false);
    std::vector<std::size_t> unchanged(n, 0);

    auto record = [&] {
        tr.positions.push_back(pos);
        tr.halted.push_back(halted);
        std::vector<std::vector<double>> v;
        for (const auto& b : bases)
            v.push_back(value_components(b.value));
        tr.values.push_back(std::move(v));
        if (!tr.consensus_round &&
            std::all_of(bases.begin(), bases.end(), [&](const B& b) { return prob.compare(b.value, ref_basis.value) == 0; }))
            tr.consensus_round = tr.positions.size() - 1;
    };
    record();

    std::vector<const B*> inbox;
    for (std::size_t t = 0; t < cfg.max_rounds; ++t) {
        auto g = disk_graph(pos, cfg.r_cmm);

        // consensus on the initial positions over the current graph
        std::vector<B> next(n);
        for (std::size_t i = 0; i < n; ++i) {
            inbox.clear();
            for (auto j : g.in_neighbors(i, 0))
                inbox.push_back(&bases[j]);
            next[i] = consensus_step(prob, &init[i], bases[i], std::span<const B* const>(inbox), rngs[i]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            unchanged[i] = next[i].elements == bases[i].elements ? unchanged[i] + 1 : 0;
            if (!halted[i] && unchanged[i] >= 2 * n) {
                halted[i] = true;
                tr.halt_round[i] = t + 1;
                if (!tr.first_halt)
                    tr.first_halt = t + 1;
            }
        }
        bases.swap(next);

        // motion from the positions at the start of the round
        std::vector<Point2> moved(n);
        std::vector<Point2> nbr;
        for (std::size_t i = 0; i < n; ++i) {
            auto target = closest_point_on_shape(pos[i], target_set(bases[i].elements, cfg.shape));
            std::vector<Disk> Q{{pos[i], cfg.r_ctr}};
            if (!halted[i]) {
                nbr.clear();
                for (auto j : g.out_neighbors(i, 0))
                    nbr.push_back(pos[j]);
                auto X = motion_constraint_set(pos[i], nbr, cfg.r_cmm);
                Q.insert(Q.end(), X.begin(), X.end());
            }
            moved[i] = fti(pos[i], target, Q);
        }

        for (std::size_t i = 0; i < n; ++i) {
            double step = dist(moved[i], pos[i]);
            tr.max_step = std::max(tr.max_step, step);
            if (step > cfg.r_ctr + 1e-12)
                ++tr.displacement_violations;
        }
        for (auto [i, j] : g.edges(0)) {
            if (i > j || dist(moved[i], moved[j]) <= cfg.r_cmm)
                continue;
            if (!halted[i] && !halted[j])
                ++tr.edge_violations;
            else
                ++tr.post_halt_disconnections;
        }
        pos.swap(moved);
        tr.rounds_run = t + 1;
        record();

        if (cfg.stop_when_settled && std::all_of(halted.begin(), halted.end(), [](bool h) { return h; })) {
            bool settled = true;
            for (std::size_t i = 0; i < n && settled; ++i)
                settled = distance_to_shape(pos[i], target_set(bases[i].elements, cfg.shape)) <= 1e-12;
            if (settled)
                break;
        }
    }

    for (auto p : pos)
        tr.max_final_distance = std::max(tr.max_final_distance, distance_to_shape(p, tr.reference_shape));
    return tr;
}

} // namespace

FormationTrace run_move_to_consensus_shape(const FormationConfig& cfg, std::uint64_t seed)
{
    if (cfg.positions.empty())
        throw PreconditionError("formation: no robots");
    if (!(cfg.r_cmm > 0.0) || !(cfg.r_ctr > 0.0))
        throw PreconditionError("formation: radii must be positive");
    if (cfg.positions.size() > 1 && !graph_metrics(disk_graph(cfg.positions, cfg.r_cmm)).strongly_connected)
        throw InitialGraphDisconnected("formation: initial disk graph is disconnected");
    switch (cfg.shape) {
    case ShapeKind::Line:
        if (!stripe_generic_check(cfg.positions))
            throw NotStripeGeneric("formation: initial positions are not stripe-generic");
        return run_shape(StripeProblem(cfg.positions.size()), cfg, seed);
    case ShapeKind::Circle:
        return run_shape(AnnulusProblem(), cfg, seed);
    default:
        return run_shape(BallProblem(), cfg, seed);
    }
}

} // namespace ccon
