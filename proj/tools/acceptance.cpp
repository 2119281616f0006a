// Acceptance runner: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ccon/abstract.hpp"
#include "ccon/consensus.hpp"
#include "ccon/formation.hpp"
#include "ccon/geometry.hpp"
#include "ccon/localization.hpp"
#include "ccon/lp.hpp"
#include "ccon/montecarlo.hpp"
#include "ccon/network.hpp"

using namespace ccon;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double unit(Rng& rng)
{
    return std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
}

std::vector<Point2> generic_points(std::size_t n, Rng& rng)
{
    while (true) {
        std::vector<Point2> pts;
        for (std::size_t i = 0; i < n; ++i) {
            double x = unit(rng);
            pts.push_back({x, unit(rng)});
        }
        if (stripe_generic_check(pts))
            return pts;
    }
}

TimeVaryingDigraph directed_cycle(const std::vector<std::size_t>& order)
{
    std::vector<Edge> e;
    for (std::size_t k = 0; k < order.size(); ++k)
        e.emplace_back(order[k], order[(k + 1) % order.size()]);
    return TimeVaryingDigraph::make_static(order.size(), e);
}

// ---- instances shared by criteria 1, 5 and 11 ----

struct Instance {
    LinearProgram lp;
    TimeVaryingDigraph g;
    std::size_t diameter = 0;
    std::string label;
};

Instance make_instance(std::size_t k)
{
    Rng rng(derive_seed(7001, {k}));
    bool model_b = k % 2;
    std::size_t d = 2 + (k / 2) % 2;
    bool erdos = (k / 4) % 2;
    std::size_t n = 5 + std::uniform_int_distribution<std::size_t>(0, 20)(rng);
    Instance in{model_b ? gen_model_b(n, d, rng) : gen_model_a(n, d, rng),
                erdos ? gen_erdos_renyi(n, 0.3, rng) : gen_line(n), 0, ""};
    in.diameter = *graph_metrics(in.g).diameter;
    in.label = fmt("k=%zu model=%s d=%zu n=%zu graph=%s", k, model_b ? "B" : "A", d, n, erdos ? "ER" : "line");
    return in;
}

struct NominalRun {
    bool terminated = false;
    bool oracle_equal = false;
    bool monotone = false;
    bool frozen_after_halt = false;
    bool halted_equal = false;
};

std::vector<NominalRun> nominal_runs()
{
    static std::vector<NominalRun> cache;
    if (!cache.empty())
        return cache;
    for (std::size_t k = 0; k < 200; ++k) {
        auto in = make_instance(k);
        LpProblem p(in.lp);
        auto ref = brute_force_basis(p, in.lp.constraints).value;
        RunOptions o;
        o.seed = k;
        o.halting = HaltingPolicy::diameter_rule(in.diameter);
        o.max_rounds = 20 * in.lp.constraints.size() + 50;
        auto tr = run_constraints_consensus(p, in.g, in.lp.constraints, o, ref);
        NominalRun r;
        r.terminated = std::all_of(tr.halt_round.begin(), tr.halt_round.end(), [](auto h) { return h.has_value(); });
        r.oracle_equal = std::all_of(tr.final_bases.begin(), tr.final_bases.end(),
                                     [&](const auto& b) { return p.compare(b.value, ref) == 0; });
        r.monotone = tr.monotonicity_violations == 0;
        for (std::size_t t = 1; t < tr.values.size(); ++t)
            for (std::size_t i = 0; i < tr.n; ++i)
                if (p.compare(tr.values[t][i], tr.values[t - 1][i]) < 0)
                    r.monotone = false;
        r.frozen_after_halt = tr.first_halt.has_value() && tr.changes_after_first_halt == 0;
        r.halted_equal = r.terminated;
        for (std::size_t i = 0; i < tr.n; ++i)
            if (tr.halt_round[i] && p.compare(tr.values[*tr.halt_round[i]][i], ref) != 0)
                r.halted_equal = false;
        cache.push_back(r);
    }
    return cache;
}

Outcome criterion1()
{
    auto runs = nominal_runs();
    std::size_t term = 0, eq = 0;
    for (const auto& r : runs) {
        term += r.terminated;
        eq += r.terminated && r.oracle_equal;
    }
    return {eq == runs.size(), fmt("terminated %zu/%zu, oracle-equal %zu/%zu", term, runs.size(), eq, runs.size())};
}

Outcome criterion5()
{
    auto runs = nominal_runs();
    std::size_t mono = 0, frozen = 0, halted = 0;
    for (const auto& r : runs) {
        mono += r.monotone;
        frozen += r.frozen_after_halt;
        halted += r.halted_equal;
    }
    std::size_t n = runs.size();
    return {mono == n && frozen == n && halted == n,
            fmt("monotone %zu/%zu, no change after first halt %zu/%zu, halted values = phi(H) %zu/%zu", mono, n,
                frozen, n, halted, n)};
}

// ---- 2 ----

template <class P, class Shape>
std::size_t geometric_equivalence(const P& p, const std::vector<Point2>& pts, Rng& rng, Shape&& shape,
                                  std::size_t& containment)
{
    Rng s(rng());
    auto b = subex_lp(p, pts, singleton_basis(p, pts[0]), s);
    auto exhaustive = brute_force_basis(p, pts).value;
    bool ok = p.compare(b.value, exhaustive) == 0;
    try {
        auto sh = shape(b.value);
        for (auto q : pts)
            if (!contains(sh, q))
                ++containment;
    } catch (const std::exception&) {
        ++containment;
    }
    return ok ? 1 : 0;
}

Outcome criterion2()
{
    Rng rng(8002);
    std::size_t ball = 0, stripe = 0, annulus = 0, containment = 0;
    for (int k = 0; k < 100; ++k) {
        auto pts = generic_points(12, rng);
        ball += geometric_equivalence(BallProblem(), pts, rng, to_ball, containment);
        stripe += geometric_equivalence(StripeProblem(pts.size()), pts, rng, to_stripe, containment);
        annulus += geometric_equivalence(AnnulusProblem(), pts, rng, to_annulus, containment);
    }
    return {ball == 100 && stripe == 100 && annulus == 100 && containment == 0,
            fmt("ball %zu/100, stripe %zu/100, annulus %zu/100, containment failures %zu", ball, stripe, annulus,
                containment)};
}

// ---- 3 ----

Outcome criterion3()
{
    Rng rng(8003);
    std::ostringstream os;
    bool ok = true;
    auto account = [&](const char* name, const AxiomReport& rep) {
        ok = ok && rep.pass && rep.trials >= 500;
        os << name << (rep.pass ? " ok" : " FAILED") << '(' << rep.trials << ") ";
    };
    auto a = gen_model_a(12, 2, rng);
    account("lp-A", check_axioms(LpProblem(a), std::span<const HalfSpace>(a.constraints), 500, rng));
    auto b = gen_model_b(12, 3, rng);
    account("lp-B", check_axioms(LpProblem(b), std::span<const HalfSpace>(b.constraints), 500, rng));
    auto pts = generic_points(12, rng);
    account("ball", check_axioms(BallProblem(), std::span<const Point2>(pts), 500, rng));
    account("stripe", check_axioms(StripeProblem(pts.size()), std::span<const Point2>(pts), 500, rng));
    account("annulus", check_axioms(AnnulusProblem(), std::span<const Point2>(pts), 500, rng));

    LinearProgram pit{2, {1.0, 0.0}, {}};
    pit.constraints = {HalfSpace::make({-1.0, 0.0}, 0.0), HalfSpace::make({0.0, -1.0}, -1.0),
                       HalfSpace::make({-1.0, 1.0}, 0.5)};
    LpProblem broken(pit, ValueOrder::CostOnly);
    auto rep = check_axioms(broken, std::span<const HalfSpace>(pit.constraints), 500, rng);
    bool caught = rep.locality_failures > 0;
    ok = ok && caught;
    os << "| cost-only order locality failures " << rep.locality_failures;
    return {ok, os.str()};
}

// ---- 4 ----

Outcome criterion4()
{
    Rng rng(2011);
    for (int attempt = 0; attempt < 200; ++attempt) {
        auto lp = find_nonpersistent_lp(rng);
        if (!lp)
            return {false, "search found no non-persistent program"};
        LpProblem p(*lp);
        auto pers = persistency_check(p, lp->constraints);
        if (pers.persistent || !pers.witness)
            return {false, "persistency_check did not report a witness"};
        auto ref = brute_force_basis(p, lp->constraints).value;
        std::vector<std::size_t> perm{0, 1, 2, 3};
        do {
            auto g = directed_cycle(perm);
            RunOptions o;
            o.max_rounds = 30;
            o.reexamine = false;
            auto bad = run_constraints_consensus(p, g, lp->constraints, o, ref);
            bool wrong = std::any_of(bad.final_bases.begin(), bad.final_bases.end(),
                                     [&](const auto& b) { return p.compare(b.value, ref) != 0; });
            if (!wrong)
                continue;
            o.reexamine = true;
            auto good = run_constraints_consensus(p, g, lp->constraints, o, ref);
            bool right = std::all_of(good.final_bases.begin(), good.final_bases.end(),
                                     [&](const auto& b) { return p.compare(b.value, ref) == 0; });
            return {right, fmt("attempt %d: persistency witness found; without re-examination wrong, standard %s",
                               attempt, right ? "correct" : "WRONG")};
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return {false, "no topology separated the two variants"};
}

// ---- 6, 7 ----

std::size_t jobs()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

Outcome criterion6()
{
    ExperimentConfig cfg;
    cfg.graph = GraphModel::Line;
    cfg.lp = LpModel::A;
    cfg.d = 4;
    cfg.n_list = {20, 40, 60, 80, 100, 120};
    cfg.runs = 20;
    cfg.seed = 8006;
    cfg.jobs = jobs();
    auto res = run_sweep(cfg);
    bool ok = res.fit.r2 >= 0.9;
    std::ostringstream os;
    os << "ratios";
    for (const auto& pt : res.points) {
        ok = ok && pt.not_completed == 0 && pt.ratio >= 0.5 && pt.ratio <= 1.6;
        os << fmt(" n=%zu:%.3f", pt.n, pt.ratio);
        if (pt.not_completed)
            os << fmt("(%zu incomplete)", pt.not_completed);
    }
    os << fmt(", fit slope %.3f R2 %.4f", res.fit.slope, res.fit.r2);
    return {ok, os.str()};
}

Outcome criterion7()
{
    ExperimentConfig cfg;
    cfg.graph = GraphModel::Line;
    cfg.lp = LpModel::A;
    cfg.d = 4;
    cfg.n_list = {40, 60};
    cfg.runs = 300;
    cfg.seed = 8007;
    cfg.jobs = jobs();
    auto res = run_sweep(cfg);
    bool ok = true;
    std::ostringstream os;
    for (const auto& pt : res.points) {
        std::size_t within = 0;
        double worst = 0.0;
        for (const auto& r : pt.runs) {
            within += r.completed && r.completion <= 4 * (pt.n - 1);
            worst = std::max(worst, static_cast<double>(r.completion) / static_cast<double>(r.diameter));
        }
        double frac = static_cast<double>(within) / static_cast<double>(pt.runs.size());
        ok = ok && frac >= 0.99;
        os << fmt("n=%zu: %zu/%zu within 4(n-1), max ratio %.2f; ", pt.n, within, pt.runs.size(), worst);
    }
    return {ok, os.str()};
}

// ---- 8 ----

Outcome criterion8()
{
    auto N = chernoff_samples(0.01, 0.01);
    double p = student_t_cdf(-7.73, 99);
    bool samples_ok = N == 27000;
    bool tail_ok = p >= 2e-12 && p <= 9e-12;
    return {samples_ok && tail_ok,
            fmt("chernoff_samples(0.01,0.01)=%zu (expected 27000: %s), t-tail(df=99,t=-7.73)=%.3e (%s)", N,
                samples_ok ? "ok" : "MISMATCH", p, tail_ok ? "ok" : "out of range")};
}

// ---- 9 ----

Outcome criterion9()
{
    std::size_t moving_viol = 0, memory_viol = 0, converged = 0;
    for (std::size_t k = 0; k < 50; ++k) {
        Rng rng(derive_seed(8009, {k}));
        std::size_t n = 5 + k % 11;
        auto g = gen_random_geometric(n, rng);
        std::size_t diam = *graph_metrics(g).diameter;

        LocalizationConfig cfg;
        cfg.box = {0, 10, 0, 10};
        cfg.v_max = 0.2;
        cfg.noise = 1.0;
        cfg.m = k % 2 ? 3 : 1;
        cfg.rounds = 40;
        cfg.seed = k;
        auto mv = run_eight_half_planes(g, cfg);
        moving_viol += mv.containment_violations;

        LocalizationConfig st = cfg;
        st.v_max = 0.0;
        st.sense_every = 0;
        st.rounds = 5 * diam + 1;
        auto sv = run_eight_half_planes(g, st);
        moving_viol += sv.containment_violations;
        converged += sv.convergence_round && *sv.convergence_round <= 5 * diam;

        for (const auto* tr : {&mv, &sv})
            for (std::size_t i = 0; i < n; ++i)
                if (tr->memory_high_water[i] > 8 + cfg.m + 8 * g.in_neighbors(i, 0).size())
                    ++memory_viol;
    }
    return {moving_viol == 0 && memory_viol == 0 && converged == 50,
            fmt("containment violations %zu, static converged within 5*diam %zu/50, memory violations %zu",
                moving_viol, converged, memory_viol)};
}

// ---- 10 ----

Outcome criterion10()
{
    std::ostringstream os;
    bool ok = true;
    for (auto kind : {ShapeKind::Point, ShapeKind::Line, ShapeKind::Circle}) {
        std::size_t good = 0;
        double worst = 0.0;
        for (std::size_t k = 0; k < 30; ++k) {
            Rng rng(derive_seed(8010, {k, static_cast<std::size_t>(kind)}));
            FormationConfig cfg;
            cfg.shape = kind;
            cfg.r_cmm = 1.0;
            cfg.r_ctr = 0.01;
            std::size_t n = 4 + k % 7;
            do
                cfg.positions = random_connected_cluster(n, cfg.r_cmm, rng);
            while (kind == ShapeKind::Line && !stripe_generic_check(cfg.positions));
            auto tr = run_move_to_consensus_shape(cfg, k);
            worst = std::max(worst, tr.max_final_distance);
            good += tr.displacement_violations == 0 && tr.edge_violations == 0 && tr.consensus_round.has_value() &&
                    tr.max_final_distance <= 10 * cfg.r_ctr;
        }
        ok = ok && good == 30;
        os << fmt("%s %zu/30 (max final distance %.2e); ", to_string(kind), good, worst);
    }
    return {ok, os.str()};
}

// ---- 11 ----

Outcome criterion11()
{
    struct Setting {
        Variant v;
        std::size_t param;
    };
    const Setting settings[] = {{Variant::MultiRound, 1}, {Variant::MultiRound, 3}, {Variant::MultiRound, 5},
                                {Variant::Cycling, 1},    {Variant::Cycling, 2}};
    std::size_t pass[5] = {};
    std::size_t memory_viol = 0;
    for (std::size_t k = 0; k < 50; ++k) {
        auto in = make_instance(k);
        LpProblem p(in.lp);
        auto ref = brute_force_basis(p, in.lp.constraints).value;
        std::size_t n = in.lp.constraints.size();
        for (std::size_t s = 0; s < 5; ++s) {
            RunOptions o;
            o.variant = settings[s].v;
            o.seed = k;
            o.stop_when_complete = true;
            o.record_values = false;
            if (o.variant == Variant::MultiRound) {
                o.latency = settings[s].param;
                o.max_rounds = o.latency * (20 * n + 50);
            } else {
                o.memory_bound = settings[s].param;
                o.max_rounds = 40 * n + 50;
            }
            auto tr = run_constraints_consensus(p, in.g, in.lp.constraints, o, ref);
            bool eq = tr.completion_round.has_value() &&
                      std::all_of(tr.final_bases.begin(), tr.final_bases.end(),
                                  [&](const auto& b) { return p.compare(b.value, ref) == 0; });
            pass[s] += eq;
            if (o.variant == Variant::Cycling)
                for (auto hw : tr.memory_high_water)
                    if (hw > memory_units(in.lp.d, o.memory_bound))
                        ++memory_viol;
        }
    }
    bool ok = memory_viol == 0 && std::all_of(std::begin(pass), std::end(pass), [](auto c) { return c == 50; });
    return {ok, fmt("multi-round L=1 %zu/50, L=3 %zu/50, L=5 %zu/50; cycling D=1 %zu/50, D=2 %zu/50; cycling "
                    "memory violations %zu",
                    pass[0], pass[1], pass[2], pass[3], pass[4], memory_viol)};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"acceptance criteria"};
    std::vector<int> only;
    app.add_option("--criterion", only, "run only these criteria (1-11)");
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> all{
        {1, "oracle equivalence", criterion1},      {2, "geometric oracle equivalence", criterion2},
        {3, "axiom suite", criterion3},             {4, "non-persistency regression", criterion4},
        {5, "monotonicity and halting", criterion5}, {6, "time-complexity linearity", criterion6},
        {7, "worst-case threshold", criterion7},    {8, "stats kernels", criterion8},
        {9, "localization", criterion9},            {10, "formation", criterion10},
        {11, "variant coverage", criterion11},
    };
    bool ok = true;
    for (const auto& c : all) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end())
            continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        ok = ok && o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << ") "
                  << fmt("[%.1fs] ", secs) << o.detail << std::endl;
    }
    return ok ? 0 : 1;
}
