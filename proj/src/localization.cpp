#include "ccon/localization.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "ccon/abstract.hpp"
#include "ccon/errors.hpp"

namespace ccon {

HalfSpace unit_half_plane(Point2 a, double b)
{
    return HalfSpace::make({a.x, a.y}, b, true);
}

bool plane_contains(const HalfSpace& h, Point2 p, double tol)
{
    return h.a[0] * p.x + h.a[1] * p.y - h.b <= tol;
}

std::vector<HalfSpace> box_half_planes(const Box2& box)
{
    return {unit_half_plane({1.0, 0.0}, box.xmax), unit_half_plane({-1.0, 0.0}, -box.xmin),
            unit_half_plane({0.0, 1.0}, box.ymax), unit_half_plane({0.0, -1.0}, -box.ymin)};
}

namespace {

double fold(double x, double lo, double hi)
{
    if (hi <= lo)
        return lo;
    while (x < lo || x > hi) {
        if (x < lo)
            x = 2 * lo - x;
        if (x > hi)
            x = 2 * hi - x;
    }
    return x;
}

} // namespace

std::vector<Point2> simulate_target(std::size_t steps, double v_max, const Box2& box, Rng& rng,
                                    std::optional<Point2> start)
{
    if (box.xmax < box.xmin || box.ymax < box.ymin)
        throw PreconditionError("simulate_target: empty box");
    if (v_max < 0.0)
        throw PreconditionError("simulate_target: negative speed bound");
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
    Point2 p = start ? *start
                     : Point2{box.xmin + u01(rng) * (box.xmax - box.xmin), box.ymin + u01(rng) * (box.ymax - box.ymin)};
    if (!box.contains(p))
        throw PreconditionError("simulate_target: start outside the box");
    std::vector<Point2> traj{p};
    for (std::size_t t = 0; t < steps; ++t) {
        double len = u01(rng) * v_max;
        double th = ang(rng);
        // folding is 1-Lipschitz and fixes points of the box, so the step
        // length does not grow
        p = {fold(p.x + len * std::cos(th), box.xmin, box.xmax), fold(p.y + len * std::sin(th), box.ymin, box.ymax)};
        traj.push_back(p);
    }
    return traj;
}

HalfSpace sense(Point2 target, Rng& rng, double w_max)
{
    if (w_max < 0.0)
        throw PreconditionError("sense: negative noise width");
    std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double th = ang(rng);
    Point2 a{std::cos(th), std::sin(th)};
    // renormalize so the unit-norm check is exact to rounding
    double len = norm(a);
    a = {a.x / len, a.y / len};
    double b = dot(a, target) + u01(rng) * w_max;
    return unit_half_plane(a, b);
}

HalfSpace time_update(const HalfSpace& h, double v_max)
{
    HalfSpace out = h;
    out.b += v_max;
    return out;
}

Projection pi_lp(std::span<const HalfSpace> H, const Box2& box, std::size_t directions)
{
    if (directions < 3)
        throw PreconditionError("pi_lp: at least three directions are needed for a bounded result");
    std::vector<HalfSpace> all(H.begin(), H.end());
    auto bx = box_half_planes(box);
    all.insert(all.end(), bx.begin(), bx.end());
    all = distinct(all);

    Projection out;
    for (std::size_t k = 0; k < directions; ++k) {
        double th = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(directions);
        VecD c{};
        // exact axis directions for the default four
        c[0] = -std::cos(th);
        c[1] = -std::sin(th);
        if (directions % 4 == 0 && (4 * k) % directions == 0) {
            static constexpr double ax[4][2] = {{-1, 0}, {0, -1}, {1, 0}, {0, 1}};
            std::size_t q = 4 * k / directions;
            c[0] = ax[q][0];
            c[1] = ax[q][1];
        }
        LpProblem p(LexOrder::rotated(c));
        // deterministic: the basis of a fixed set must not depend on history
        Rng rng(0x5eedULL + k);
        auto b = subex_lp(p, std::span<const HalfSpace>(all), singleton_basis(p, bx[0]), rng);
        if (b.value.kind == LexKind::Infeasible)
            throw InfeasibleError("pi_lp: measurements and box have empty intersection");
        auto e = b.elements;
        std::sort(e.begin(), e.end());
        out.planes.insert(out.planes.end(), e.begin(), e.end());
        out.support.push_back(-b.value.cost());
    }
    return out;
}

std::vector<Projection> centralized_recursion(const std::vector<std::vector<HalfSpace>>& measurements, double v_max,
                                              const Box2& box, std::size_t directions)
{
    std::vector<Projection> out;
    if (measurements.empty())
        return out;
    out.push_back(pi_lp(measurements[0], box, directions));
    for (std::size_t t = 1; t < measurements.size(); ++t) {
        std::vector<HalfSpace> pred;
        for (const auto& h : out.back().planes)
            pred.push_back(time_update(h, v_max));
        pred.insert(pred.end(), measurements[t].begin(), measurements[t].end());
        out.push_back(pi_lp(pred, box, directions));
    }
    return out;
}

LocalizationTrace run_eight_half_planes(const TimeVaryingDigraph& g, const LocalizationConfig& cfg)
{
    const std::size_t n = g.n();
    if (cfg.m < 1)
        throw PreconditionError("run_eight_half_planes: m must be at least 1");
    if (!graph_metrics(g).strongly_connected)
        throw NotJointlyConnected("run_eight_half_planes: graph is not connected");
    const std::size_t width = 2 * cfg.directions;

    Rng target_rng(derive_seed(cfg.seed, {0}));
    LocalizationTrace tr;
    tr.n = n;
    tr.target = simulate_target(cfg.rounds, cfg.v_max, cfg.box, target_rng, cfg.start);
    std::vector<Rng> sensors;
    for (std::size_t i = 0; i < n; ++i)
        sensors.emplace_back(derive_seed(cfg.seed, {1, i}));

    auto check = [&](std::size_t t, const std::vector<std::vector<HalfSpace>>& planes) {
        for (const auto& ps : planes)
            for (const auto& h : ps)
                if (!plane_contains(h, tr.target[t]))
                    ++tr.containment_violations;
    };

    // round 0: first measurement everywhere
    std::vector<std::deque<HalfSpace>> meas(n);
    std::vector<std::vector<HalfSpace>> opt(n);
    std::vector<HalfSpace> sensed(n);
    for (std::size_t i = 0; i < n; ++i) {
        sensed[i] = sense(tr.target[0], sensors[i], cfg.noise);
        meas[i].assign(cfg.m, sensed[i]);
        opt[i].assign(width, sensed[i]);
    }
    tr.measurements.push_back(sensed);
    tr.centralized_initial = pi_lp(sensed, cfg.box, cfg.directions).planes;
    tr.memory_high_water.assign(n, width + cfg.m);
    tr.memory_bound.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        tr.memory_bound[i] = width + cfg.m + width * g.in_neighbors(i, 0).size();

    auto canonical = [](std::vector<HalfSpace> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    const bool static_single = cfg.v_max == 0.0 && cfg.sense_every == 0;
    const auto central_sorted = canonical(tr.centralized_initial);
    auto record = [&](std::size_t t, const std::vector<std::vector<double>>& support) {
        tr.planes.push_back(opt);
        tr.support.push_back(support);
        check(t, opt);
        if (static_single && !tr.convergence_round &&
            std::all_of(opt.begin(), opt.end(), [&](const auto& o) { return canonical(o) == central_sorted; }))
            tr.convergence_round = t;
    };
    std::vector<std::vector<double>> support(n, std::vector<double>(cfg.directions, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        support[i] = pi_lp(opt[i], cfg.box, cfg.directions).support;
    record(0, support);

    for (std::size_t t = 1; t <= cfg.rounds; ++t) {
        const bool sensing = cfg.sense_every > 0 && t % cfg.sense_every == 0;
        std::vector<std::vector<HalfSpace>> next(n);
        std::vector<HalfSpace> round_meas;
        for (std::size_t i = 0; i < n; ++i) {
            for (auto& h : meas[i])
                h = time_update(h, cfg.v_max);
            if (sensing) {
                auto h = sense(tr.target[t], sensors[i], cfg.noise);
                round_meas.push_back(h);
                meas[i].push_back(h);
                while (meas[i].size() > cfg.m)
                    meas[i].pop_front();
            }
            std::vector<HalfSpace> H(meas[i].begin(), meas[i].end());
            for (const auto& h : opt[i])
                H.push_back(time_update(h, cfg.v_max));
            const auto& nin = g.in_neighbors(i, t - 1);
            for (auto j : nin)
                for (const auto& h : opt[j])
                    H.push_back(time_update(h, cfg.v_max));
            tr.memory_high_water[i] = std::max(tr.memory_high_water[i], H.size());
            auto proj = pi_lp(H, cfg.box, cfg.directions);
            next[i] = std::move(proj.planes);
            support[i] = std::move(proj.support);
        }
        opt.swap(next);
        tr.measurements.push_back(round_meas);
        record(t, support);
    }
    return tr;
}

} // namespace ccon
