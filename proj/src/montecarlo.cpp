#include "ccon/montecarlo.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "ccon/errors.hpp"
#include "ccon/lp.hpp"

namespace ccon {

const char* to_string(GraphModel m)
{
    switch (m) {
    case GraphModel::ErdosRenyi:
        return "erdos_renyi";
    case GraphModel::Rgg:
        return "rgg";
    default:
        return "line";
    }
}

const char* to_string(LpModel m)
{
    return m == LpModel::A ? "A" : "B";
}

GraphModel parse_graph_model(const std::string& s)
{
    if (s == "line" || s == "LINE")
        return GraphModel::Line;
    if (s == "erdos_renyi" || s == "ERDOS_RENYI" || s == "er")
        return GraphModel::ErdosRenyi;
    if (s == "rgg" || s == "RGG")
        return GraphModel::Rgg;
    throw ParseError("unknown graph model: " + s);
}

LpModel parse_lp_model(const std::string& s)
{
    if (s == "A" || s == "a")
        return LpModel::A;
    if (s == "B" || s == "b")
        return LpModel::B;
    throw ParseError("unknown LP model: " + s);
}

std::vector<double> PointResult::ratios() const
{
    std::vector<double> r;
    r.reserve(runs.size());
    for (const auto& x : runs)
        r.push_back(static_cast<double>(x.completion) / static_cast<double>(std::max<std::size_t>(1, x.diameter)));
    return r;
}

RunRecord run_single(const ExperimentConfig& cfg, std::size_t n, std::size_t run)
{
    Rng grng(derive_seed(cfg.seed, {n, run, 1}));
    Rng lrng(derive_seed(cfg.seed, {n, run, 2}));
    TimeVaryingDigraph g;
    switch (cfg.graph) {
    case GraphModel::Line:
        g = gen_line(n);
        break;
    case GraphModel::ErdosRenyi:
        g = gen_erdos_renyi(n, cfg.er_epsilon, grng);
        break;
    case GraphModel::Rgg:
        g = gen_random_geometric(n, grng);
        break;
    }
    auto lp = cfg.lp == LpModel::A ? gen_model_a(n, cfg.d, lrng) : gen_model_b(n, cfg.d, lrng);
    LpProblem prob(lp);

    RunOptions opts;
    opts.max_rounds = cfg.max_rounds_per_node * n + 50;
    opts.halting = cfg.halting;
    opts.seed = derive_seed(cfg.seed, {n, run, 3});
    opts.stop_when_complete = true;
    opts.record_values = false;
    auto tr = run_constraints_consensus(prob, g, lp.constraints, opts);

    RunRecord rec;
    rec.completed = tr.completion_round.has_value();
    rec.completion = tr.completion_round.value_or(tr.rounds_run);
    rec.diameter = graph_metrics(g).diameter.value_or(0);
    return rec;
}

void summarize(PointResult& pt)
{
    const std::size_t N = pt.runs.size();
    if (N == 0)
        return;
    double s = 0.0, sd = 0.0;
    pt.not_completed = 0;
    for (const auto& r : pt.runs) {
        s += static_cast<double>(r.completion);
        sd += static_cast<double>(r.diameter);
        if (!r.completed)
            ++pt.not_completed;
    }
    pt.mean_completion = s / static_cast<double>(N);
    pt.mean_diameter = sd / static_cast<double>(N);
    double ss = 0.0;
    for (const auto& r : pt.runs)
        ss += std::pow(static_cast<double>(r.completion) - pt.mean_completion, 2);
    pt.std_completion = N > 1 ? std::sqrt(ss / static_cast<double>(N - 1)) : 0.0;
    auto rs = pt.ratios();
    pt.ratio = std::accumulate(rs.begin(), rs.end(), 0.0) / static_cast<double>(N);
    // normal approximation
    double half = 1.96 * pt.std_completion / std::sqrt(static_cast<double>(N));
    pt.ci_low = pt.mean_completion - half;
    pt.ci_high = pt.mean_completion + half;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.empty())
        throw PreconditionError("fit_line: need equally many x and y values");
    const double N = static_cast<double>(x.size());
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / N;
    double my = std::accumulate(y.begin(), y.end(), 0.0) / N;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        sse += std::pow(y[i] - (f.intercept + f.slope * x[i]), 2);
    f.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
    return f;
}

SweepResult run_sweep(const ExperimentConfig& cfg)
{
    if (cfg.d < 2 || cfg.d > 5)
        throw PreconditionError("run_sweep: d must be in 2..5");
    if (cfg.n_list.empty() || cfg.runs == 0)
        throw PreconditionError("run_sweep: empty n_list or zero runs");
    for (auto n : cfg.n_list)
        if (n < cfg.d + 1)
            throw PreconditionError("run_sweep: every n must be at least d + 1");
    const std::uint64_t nmax = *std::max_element(cfg.n_list.begin(), cfg.n_list.end());
    if (nmax * cfg.runs * cfg.n_list.size() > cfg.budget)
        throw BudgetExceeded("run_sweep: max(n) * runs * |n_list| exceeds the budget");

    SweepResult res;
    res.config = cfg;
    res.points.resize(cfg.n_list.size());
    for (std::size_t k = 0; k < cfg.n_list.size(); ++k) {
        res.points[k].n = cfg.n_list[k];
        res.points[k].runs.resize(cfg.runs);
    }

    // Work items are independent; results land in fixed slots so the output
    // does not depend on scheduling.
    const std::size_t total = cfg.n_list.size() * cfg.runs;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        while (true) {
            std::size_t w = next.fetch_add(1);
            if (w >= total)
                return;
            std::size_t k = w / cfg.runs, run = w % cfg.runs;
            try {
                res.points[k].runs[run] = run_single(cfg, cfg.n_list[k], run);
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure)
                    failure = std::current_exception();
                next.store(total);
            }
        }
    };
    const std::size_t jobs = std::max<std::size_t>(1, std::min(cfg.jobs, total));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t j = 0; j < jobs; ++j)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);

    std::vector<double> xs, ys;
    for (auto& pt : res.points) {
        summarize(pt);
        xs.push_back(static_cast<double>(pt.n));
        ys.push_back(pt.mean_completion);
    }
    res.fit = fit_line(xs, ys);
    return res;
}

double student_t_cdf(double t, double df)
{
    if (std::isinf(t))
        return t < 0 ? 0.0 : 1.0;
    boost::math::students_t dist(df);
    return boost::math::cdf(dist, t);
}

TTestResult t_test_one_sample(const std::vector<double>& samples, double mu0)
{
    const std::size_t N = samples.size();
    if (N < 2)
        throw InsufficientSamples("t-test needs at least two samples");
    double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(N);
    double ss = 0.0;
    for (double s : samples)
        ss += (s - mean) * (s - mean);
    double sd = std::sqrt(ss / static_cast<double>(N - 1));
    TTestResult r;
    r.df = N - 1;
    double diff = mean - mu0;
    if (sd == 0.0)
        r.t = diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
    else
        r.t = diff / (sd / std::sqrt(static_cast<double>(N)));
    r.p_one_sided = student_t_cdf(r.t, static_cast<double>(r.df));
    return r;
}

std::size_t chernoff_samples(double epsilon, double eta)
{
    if (!(epsilon > 0.0 && epsilon < 1.0) || !(eta > 0.0 && eta < 1.0))
        throw OutOfRange("chernoff_samples: epsilon and eta must lie in (0, 1)");
    double bound = std::log(2.0 / eta) / (2.0 * epsilon * epsilon);
    // Guard against the bound landing a hair above an integer by rounding.
    return static_cast<std::size_t>(std::ceil(bound * (1.0 - 1e-14)));
}

double empirical_probability(const std::vector<bool>& indicators)
{
    if (indicators.empty())
        throw EmptyInput("empirical_probability: no samples");
    auto k = std::count(indicators.begin(), indicators.end(), true);
    return static_cast<double>(k) / static_cast<double>(indicators.size());
}

std::string plot_stem(const ExperimentConfig& cfg)
{
    return std::string(to_string(cfg.graph)) + "_" + to_string(cfg.lp) + "_d" + std::to_string(cfg.d);
}

std::filesystem::path export_plot_data(const SweepResult& r, const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    auto stem = plot_stem(r.config);
    auto data = dir / (stem + ".csv");
    auto fit = dir / (stem + "_fit.csv");
    std::ofstream out(data);
    if (!out)
        throw IoError("cannot write " + data.string());
    out << std::setprecision(17);
    out << "n,mean_completion,std,diameter,ratio,ci_low,ci_high\n";
    for (const auto& p : r.points)
        out << p.n << ',' << p.mean_completion << ',' << p.std_completion << ',' << p.mean_diameter << ','
            << p.ratio << ',' << p.ci_low << ',' << p.ci_high << '\n';
    if (!out)
        throw IoError("write failed: " + data.string());
    std::ofstream f(fit);
    if (!f)
        throw IoError("cannot write " + fit.string());
    f << std::setprecision(17);
    f << "slope,intercept,r2\n" << r.fit.slope << ',' << r.fit.intercept << ',' << r.fit.r2 << '\n';
    if (!f)
        throw IoError("write failed: " + fit.string());
    return data;
}

} // namespace ccon
