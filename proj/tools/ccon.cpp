// Command-line front end: solve, consensus, montecarlo, localize, formation
// and check. Exit codes: 0 success, 1 usage or input error, 2 a runtime
// invariant failed, 3 internal error.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "ccon/abstract.hpp"
#include "ccon/consensus.hpp"
#include "ccon/formation.hpp"
#include "ccon/geometry.hpp"
#include "ccon/io.hpp"
#include "ccon/localization.hpp"
#include "ccon/lp.hpp"
#include "ccon/montecarlo.hpp"
#include "ccon/network.hpp"

using namespace ccon;
namespace fs = std::filesystem;

namespace {

struct Common {
    std::string config;
    std::uint64_t seed = 0;
    std::string out = "out";
    int verbosity = 0;
};

enum Exit { kOk = 0, kUsage = 1, kInvariant = 2, kInternal = 3 };

std::uniform_real_distribution<double> unit(-1.0, 1.0);

// ---- problem descriptions shared by solve and consensus ----

enum class ProblemKind { Lp, Ball, Stripe, Annulus };

struct ProblemSpec {
    ProblemKind kind = ProblemKind::Lp;
    LinearProgram lp;
    std::vector<Point2> points;

    std::size_t size() const { return kind == ProblemKind::Lp ? lp.constraints.size() : points.size(); }
};

ProblemKind parse_problem_kind(const std::string& s)
{
    if (s == "lp")
        return ProblemKind::Lp;
    if (s == "ball")
        return ProblemKind::Ball;
    if (s == "stripe")
        return ProblemKind::Stripe;
    if (s == "annulus")
        return ProblemKind::Annulus;
    throw ParseError("unknown problem: " + s);
}

ProblemSpec problem_from_json(const json& j, std::uint64_t seed)
{
    try {
        ProblemSpec spec;
        spec.kind = parse_problem_kind(j.at("problem").get<std::string>());
        Rng rng(derive_seed(seed, {0x9e0ULL}));
        if (j.contains("generate")) {
            const auto& g = j.at("generate");
            auto n = g.at("n").get<std::size_t>();
            if (spec.kind == ProblemKind::Lp) {
                auto d = g.at("d").get<std::size_t>();
                auto model = parse_lp_model(g.value("model", std::string("A")));
                spec.lp = model == LpModel::A ? gen_model_a(n, d, rng) : gen_model_b(n, d, rng);
            } else {
                for (std::size_t i = 0; i < n; ++i) {
                    double x = unit(rng);
                    spec.points.push_back({x, unit(rng)});
                }
            }
            return spec;
        }
        if (spec.kind == ProblemKind::Lp) {
            spec.lp.d = j.at("d").get<std::size_t>();
            auto c = j.at("c").get<std::vector<double>>();
            if (c.size() != spec.lp.d || spec.lp.d < 1 || spec.lp.d > kMaxDim)
                throw ParseError("cost vector length must equal d (1..5)");
            std::copy(c.begin(), c.end(), spec.lp.c.begin());
            for (const auto& h : j.at("constraints")) {
                spec.lp.constraints.push_back(half_space_from_json(h));
                if (spec.lp.constraints.back().dim != spec.lp.d)
                    throw ParseError("constraint dimension differs from d");
            }
        } else {
            spec.points = points_from_json(j.at("points"));
        }
        if (spec.size() == 0)
            throw ParseError("problem has no constraints");
        return spec;
    } catch (const json::exception& e) {
        throw ParseError(std::string("problem: ") + e.what());
    }
}

// Calls f(problem, constraints) with the concrete problem type.
template <class F>
auto with_problem(const ProblemSpec& spec, F&& f)
{
    switch (spec.kind) {
    case ProblemKind::Ball:
        return f(BallProblem(), spec.points);
    case ProblemKind::Stripe:
        return f(StripeProblem(spec.points.size()), spec.points);
    case ProblemKind::Annulus:
        return f(AnnulusProblem(), spec.points);
    default:
        return f(LpProblem(spec.lp), spec.lp.constraints);
    }
}

fs::path out_dir(const Common& c)
{
    fs::path p(c.out);
    std::error_code ec;
    fs::create_directories(p, ec);
    return p;
}

// ---- solve ----

int cmd_solve(const Common& c, bool oracle)
{
    auto spec = problem_from_json(load_json(c.config), c.seed);
    return with_problem(spec, [&](const auto& p, const auto& G) {
        Rng rng(derive_seed(c.seed, {1}));
        SubexStats stats;
        auto b = subex_lp(p, G, singleton_basis(p, G[0]), rng, &stats);
        json res{{"value", to_json(b.value)},
                 {"basis", basis_to_json(b)},
                 {"primitive_call_count", stats.primitive_calls()},
                 {"violation_tests", stats.violation_tests},
                 {"basis_computations", stats.basis_computations}};
        bool ok = true;
        if (oracle) {
            // Past the brute-force guard, fall back to the exhaustive value of
            // the whole set, which is what brute force compares against anyway.
            bool small = distinct(G).size() <= kBruteForceLimit;
            auto ov = small ? brute_force_basis(p, G).value : value_of(p, std::span(G));
            ok = p.compare(ov, b.value) == 0;
            res["oracle"] = {{"value", to_json(ov)}, {"match", ok}, {"method", small ? "brute_force" : "exhaustive_value"}};
        }
        save_json(res, out_dir(c) / "solve.json");
        std::cout << res["value"].dump() << '\n';
        if (oracle)
            std::cout << "oracle_match: " << (ok ? "true" : "false") << '\n';
        return ok ? kOk : kInvariant;
    });
}

// ---- graphs ----

TimeVaryingDigraph graph_from_config(const json& j, std::size_t n, Rng& rng, std::vector<Point2>* positions = nullptr)
{
    auto model = j.value("model", std::string("line"));
    if (model == "line")
        return gen_line(n);
    if (model == "erdos_renyi")
        return gen_erdos_renyi(n, j.value("epsilon", 0.3), rng);
    if (model == "rgg") {
        auto gg = gen_random_geometric_detailed(n, rng);
        if (positions)
            *positions = gg.positions;
        return gg.graph;
    }
    if (model == "explicit") {
        auto g = graph_from_json(j);
        if (g.n() != n)
            throw ParseError("explicit graph size differs from the number of constraints");
        return g;
    }
    throw ParseError("unknown graph model: " + model);
}

HaltingPolicy halting_from_json(const json& j, std::size_t diameter)
{
    if (j.is_null())
        return HaltingPolicy::none();
    if (j.is_string()) {
        auto s = j.get<std::string>();
        if (s == "NONE")
            return HaltingPolicy::none();
        if (s == "DIAMETER_RULE")
            return HaltingPolicy::diameter_rule(diameter);
        throw ParseError("unknown halting policy: " + s);
    }
    if (j.contains("fixed"))
        return HaltingPolicy::fixed(j.at("fixed").get<std::size_t>());
    if (j.contains("diameter"))
        return HaltingPolicy::diameter_rule(j.at("diameter").get<std::size_t>());
    throw ParseError("unknown halting policy");
}

Variant parse_variant(const std::string& s)
{
    if (s == "NOMINAL")
        return Variant::Nominal;
    if (s == "MULTI_ROUND")
        return Variant::MultiRound;
    if (s == "CYCLING")
        return Variant::Cycling;
    throw ParseError("unknown variant: " + s);
}

// ---- consensus ----

int cmd_consensus(const Common& c)
{
    auto cfg = load_json(c.config);
    ProblemSpec spec;
    RunOptions opts;
    TimeVaryingDigraph g;
    try {
        spec = problem_from_json(cfg.at("problem"), c.seed);
        Rng grng(derive_seed(c.seed, {2}));
        g = graph_from_config(cfg.value("graph", json::object()), spec.size(), grng);
        opts.variant = parse_variant(cfg.value("variant", std::string("NOMINAL")));
        opts.max_rounds = cfg.value("max_rounds", std::size_t{20} * spec.size() + 50);
        auto m = graph_metrics(g);
        opts.halting = halting_from_json(cfg.value("halting", json()), m.diameter.value_or(spec.size()));
        opts.latency = cfg.value("latency", std::size_t{1});
        opts.memory_bound = cfg.value("memory_bound", std::size_t{1});
        opts.seed = derive_seed(c.seed, {3});
    } catch (const json::exception& e) {
        throw ParseError(std::string("consensus config: ") + e.what());
    }

    return with_problem(spec, [&](const auto& p, const auto& G) {
        auto tr = run_constraints_consensus(p, g, G, opts);
        auto oracle = G.size() <= kBruteForceLimit ? brute_force_basis(p, G).value : tr.reference;
        bool match = tr.completion_round.has_value();
        for (const auto& b : tr.final_bases)
            match = match && p.compare(b.value, oracle) == 0;
        bool invariants = tr.monotonicity_violations == 0 && tr.memory_within_bounds() && tr.changes_after_first_halt == 0;

        auto dir = out_dir(c);
        write_consensus_csv(tr, dir / "trace.csv");
        auto summary = consensus_summary(tr);
        summary["variant"] = to_string(opts.variant);
        summary["graph"] = graph_to_json(g);
        summary["oracle_match"] = match;
        summary["oracle"] = G.size() <= kBruteForceLimit ? "brute_force" : "centralized_subex";
        summary["invariants_ok"] = invariants;
        save_json(summary, dir / "summary.json");
        std::cout << "completion_round: " << summary["completion_round"].dump() << "\noracle_match: "
                  << (match ? "true" : "false") << '\n';
        return match && invariants ? kOk : kInvariant;
    });
}

// ---- montecarlo ----

int cmd_montecarlo(const Common& c, std::size_t jobs)
{
    auto j = load_json(c.config);
    ExperimentConfig cfg;
    try {
        cfg.graph = parse_graph_model(j.value("graph", std::string("line")));
        cfg.lp = parse_lp_model(j.value("lp_model", std::string("A")));
        cfg.d = j.value("d", std::size_t{2});
        cfg.n_list = j.at("n_list").get<std::vector<std::size_t>>();
        cfg.runs = j.value("runs", std::size_t{10});
        cfg.er_epsilon = j.value("er_epsilon", 0.3);
        cfg.budget = j.value("budget", cfg.budget);
        cfg.max_rounds_per_node = j.value("max_rounds_per_node", cfg.max_rounds_per_node);
        if (j.contains("halting_fixed"))
            cfg.halting = HaltingPolicy::fixed(j.at("halting_fixed").get<std::size_t>());
    } catch (const json::exception& e) {
        throw ParseError(std::string("montecarlo config: ") + e.what());
    }
    cfg.seed = c.seed;
    cfg.jobs = jobs;
    const double mu0 = j.value("t_test_mu0", 1.5);

    auto res = run_sweep(cfg);
    auto dir = out_dir(c);
    export_plot_data(res, dir);
    json points = json::array();
    std::size_t incomplete = 0;
    for (const auto& p : res.points) {
        json pj{{"n", p.n},
                {"mean_completion", p.mean_completion},
                {"std", p.std_completion},
                {"mean_diameter", p.mean_diameter},
                {"ratio", p.ratio},
                {"ci_low", p.ci_low},
                {"ci_high", p.ci_high},
                {"not_completed", p.not_completed}};
        std::vector<std::size_t> times;
        for (const auto& r : p.runs)
            times.push_back(r.completion);
        pj["completion_times"] = times;
        if (p.runs.size() >= 2) {
            auto t = t_test_one_sample(p.ratios(), mu0);
            pj["t_test"] = {{"mu0", mu0}, {"t", t.t}, {"df", t.df}, {"p_one_sided", t.p_one_sided}};
        }
        incomplete += p.not_completed;
        points.push_back(pj);
    }
    json summary{{"graph", to_string(cfg.graph)},
                 {"lp_model", to_string(cfg.lp)},
                 {"d", cfg.d},
                 {"runs", cfg.runs},
                 {"points", points},
                 {"fit", {{"slope", res.fit.slope}, {"intercept", res.fit.intercept}, {"r2", res.fit.r2}}}};
    save_json(summary, dir / "summary.json");
    for (const auto& p : res.points)
        std::cout << "n=" << p.n << " mean=" << p.mean_completion << " ratio=" << p.ratio << '\n';
    return incomplete == 0 ? kOk : kInvariant;
}

// ---- localize ----

int cmd_localize(const Common& c)
{
    auto j = load_json(c.config);
    LocalizationConfig cfg;
    TimeVaryingDigraph g;
    try {
        if (j.contains("box")) {
            auto b = j.at("box").get<std::vector<double>>();
            if (b.size() != 4)
                throw ParseError("box must be [xmin, xmax, ymin, ymax]");
            cfg.box = {b[0], b[1], b[2], b[3]};
        }
        cfg.v_max = j.value("v_max", 0.0);
        cfg.noise = j.value("noise", cfg.noise);
        cfg.m = j.value("m", std::size_t{1});
        cfg.rounds = j.value("rounds", cfg.rounds);
        cfg.sense_every = j.value("sense_every", cfg.sense_every);
        cfg.directions = j.value("directions", cfg.directions);
        auto n = j.value("n", std::size_t{6});
        Rng grng(derive_seed(c.seed, {2}));
        g = graph_from_config(j.value("graph", json::object()), n, grng);
    } catch (const json::exception& e) {
        throw ParseError(std::string("localize config: ") + e.what());
    }
    cfg.seed = c.seed;
    auto tr = run_eight_half_planes(g, cfg);
    auto dir = out_dir(c);
    write_localization_csv(tr, dir / "trace.csv");
    auto summary = localization_summary(tr);
    bool memory_ok = true;
    for (std::size_t i = 0; i < tr.n; ++i)
        memory_ok = memory_ok && tr.memory_high_water[i] <= tr.memory_bound[i];
    summary["invariants_ok"] = tr.containment_violations == 0 && memory_ok;
    save_json(summary, dir / "summary.json");
    std::cout << "containment_violations: " << tr.containment_violations << '\n';
    return summary["invariants_ok"].get<bool>() ? kOk : kInvariant;
}

// ---- formation ----

int cmd_formation(const Common& c)
{
    auto j = load_json(c.config);
    FormationConfig cfg;
    try {
        cfg.shape = parse_shape_kind(j.value("shape", std::string("POINT")));
        cfg.r_cmm = j.value("r_cmm", 1.0);
        cfg.r_ctr = j.value("r_ctr", 0.01 * cfg.r_cmm);
        cfg.max_rounds = j.value("max_rounds", cfg.max_rounds);
        if (j.contains("positions")) {
            cfg.positions = points_from_json(j.at("positions"));
        } else {
            auto n = j.at("random_cluster").at("n").get<std::size_t>();
            Rng rng(derive_seed(c.seed, {4}));
            cfg.positions = random_connected_cluster(n, cfg.r_cmm, rng);
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("formation config: ") + e.what());
    }
    auto tr = run_move_to_consensus_shape(cfg, c.seed);
    auto dir = out_dir(c);
    write_formation_csv(tr, dir / "trace.csv");
    auto summary = formation_summary(tr);
    bool ok = tr.displacement_violations == 0 && tr.edge_violations == 0;
    summary["invariants_ok"] = ok;
    save_json(summary, dir / "summary.json");
    std::cout << "max_final_distance: " << tr.max_final_distance << '\n';
    return ok ? kOk : kInvariant;
}

// ---- check ----

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string note;
};

std::vector<Point2> random_points(std::size_t n, Rng& rng)
{
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < n; ++i) {
        double x = unit(rng);
        pts.push_back({x, unit(rng)});
    }
    return pts;
}

std::vector<Point2> generic_points(std::size_t n, Rng& rng)
{
    while (true) {
        auto pts = random_points(n, rng);
        if (stripe_generic_check(pts))
            return pts;
    }
}

SuiteResult suite_axioms(bool broken_order)
{
    SuiteResult r;
    r.name = "axioms";
    Rng rng(101);
    auto account = [&](const AxiomReport& rep, const std::string& what) {
        ++r.cases;
        if (!rep.pass) {
            ++r.failures;
            if (r.note.empty())
                r.note = what + ": " + rep.witness;
        }
    };
    auto order = broken_order ? ValueOrder::CostOnly : ValueOrder::Lexicographic;
    // the two-dimensional instance where ranking by cost alone breaks locality
    LinearProgram pit{2, {1.0, 0.0}, {}};
    pit.constraints = {HalfSpace::make({-1.0, 0.0}, 0.0), HalfSpace::make({0.0, -1.0}, -1.0),
                       HalfSpace::make({-1.0, 1.0}, 0.5)};
    {
        LpProblem p(pit, order);
        std::vector<HalfSpace> H = pit.constraints;
        account(check_axioms(p, std::span<const HalfSpace>(H), 400, rng), "lp pitfall");
    }
    for (int k = 0; k < 4; ++k) {
        auto lp = k % 2 ? gen_model_b(10, 2 + k / 2, rng) : gen_model_a(10, 2 + k / 2, rng);
        LpProblem p(lp, order);
        account(check_axioms(p, std::span<const HalfSpace>(lp.constraints), 200, rng), "lp model");
    }
    auto pts = generic_points(8, rng);
    account(check_axioms(BallProblem(), std::span<const Point2>(pts), 200, rng), "ball");
    account(check_axioms(StripeProblem(pts.size()), std::span<const Point2>(pts), 200, rng), "stripe");
    account(check_axioms(AnnulusProblem(), std::span<const Point2>(pts), 200, rng), "annulus");
    return r;
}

SuiteResult suite_persistency()
{
    SuiteResult r;
    r.name = "persistency";
    Rng rng(2011);
    auto lp = find_nonpersistent_lp(rng);
    ++r.cases;
    if (!lp) {
        ++r.failures;
        r.note = "no non-persistent program found";
        return r;
    }
    LpProblem p(*lp);
    auto res = persistency_check(p, lp->constraints);
    ++r.cases;
    if (res.persistent || !res.witness) {
        ++r.failures;
        r.note = "expected a non-persistence witness";
    }
    // a single-basis instance is trivially persistent
    std::vector<HalfSpace> one{lp->constraints[0]};
    ++r.cases;
    if (!persistency_check(p, one).persistent)
        ++r.failures;
    return r;
}

SuiteResult suite_oracle()
{
    SuiteResult r;
    r.name = "oracle_equivalence";
    Rng rng(303);
    auto compare = [&](const auto& p, const auto& G) {
        ++r.cases;
        Rng s(rng());
        auto b = subex_lp(p, G, singleton_basis(p, G[0]), s);
        if (p.compare(b.value, brute_force_basis(p, G).value) != 0)
            ++r.failures;
    };
    for (int k = 0; k < 20; ++k) {
        auto lp = k % 2 ? gen_model_b(12, 2 + k % 3, rng) : gen_model_a(12, 2 + k % 3, rng);
        compare(LpProblem(lp), lp.constraints);
    }
    for (int k = 0; k < 10; ++k) {
        auto pts = generic_points(10, rng);
        compare(BallProblem(), pts);
        compare(StripeProblem(pts.size()), pts);
        compare(AnnulusProblem(), pts);
    }
    return r;
}

int cmd_check(bool broken_order)
{
    std::vector<SuiteResult> suites{suite_axioms(broken_order), suite_persistency(), suite_oracle()};
    bool ok = true;
    for (const auto& s : suites) {
        bool pass = s.failures == 0;
        ok = ok && pass;
        std::cout << (pass ? "PASS " : "FAIL ") << s.name << " cases=" << s.cases << " failures=" << s.failures;
        if (!s.note.empty())
            std::cout << " (" << s.note << ')';
        std::cout << '\n';
    }
    return ok ? kOk : kInvariant;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Constraints consensus: LP-type problems solved over synchronous networks"};
    app.require_subcommand(1);

    Common common;
    bool oracle = false;
    bool broken_order = false;
    std::size_t jobs = 1;

    auto add_common = [&](CLI::App* sub, bool stochastic) {
        sub->add_option("--config", common.config, "JSON configuration file")->required()->check(CLI::ExistingFile);
        auto* s = sub->add_option("--seed", common.seed, "master seed");
        if (stochastic)
            s->required();
        sub->add_option("--out", common.out, "output directory")->capture_default_str();
        sub->add_flag("-v,--verbose", common.verbosity, "more output");
    };

    auto* solve = app.add_subcommand("solve", "solve one LP-type problem");
    add_common(solve, true);
    solve->add_flag("--oracle", oracle, "cross-check against brute force");
    auto* cons = app.add_subcommand("consensus", "simulate constraints consensus");
    add_common(cons, true);
    auto* mc = app.add_subcommand("montecarlo", "completion-time sweep");
    add_common(mc, true);
    mc->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    auto* loc = app.add_subcommand("localize", "distributed target localization");
    add_common(loc, true);
    auto* form = app.add_subcommand("formation", "move-to-consensus-shape");
    add_common(form, true);
    auto* check = app.add_subcommand("check", "self-test suites");
    check->add_flag("--broken-order", broken_order)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*solve)
            return cmd_solve(common, oracle);
        if (*cons)
            return cmd_consensus(common);
        if (*mc)
            return cmd_montecarlo(common, jobs);
        if (*loc)
            return cmd_localize(common);
        if (*form)
            return cmd_formation(common);
        if (*check)
            return cmd_check(broken_order);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kInternal;
}
