#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "ccon/montecarlo.hpp"

using namespace ccon;

namespace {

std::size_t count_lines(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::size_t k = 0;
    std::string line;
    while (std::getline(in, line))
        ++k;
    return k;
}

} // namespace

TEST_SUITE("montecarlo")
{
    TEST_CASE("Student t tail")
    {
        // scipy.stats.t.cdf
        CHECK(student_t_cdf(-7.73, 99) == doctest::Approx(4.524e-12).epsilon(1e-3));
        CHECK(student_t_cdf(-10.90, 99) == doctest::Approx(6.01e-19).epsilon(1e-2));
        CHECK(student_t_cdf(-6.49, 99) == doctest::Approx(1.71e-9).epsilon(1e-2));
        CHECK(student_t_cdf(0.0, 5) == doctest::Approx(0.5));
        // published table rows, within a factor of two
        double p240 = student_t_cdf(-7.73, 99);
        CHECK(p240 >= 4.3e-12 / 2);
        CHECK(p240 <= 4.3e-12 * 2);
        double p220 = student_t_cdf(-10.90, 99);
        CHECK(p220 >= 6.0e-19 / 2);
        CHECK(p220 <= 6.0e-19 * 2);
    }

    TEST_CASE("one-sample t-test")
    {
        auto r = t_test_one_sample({1.5, 1.5, 1.5}, 1.5);
        CHECK(r.t == 0.0);
        CHECK(r.df == 2);
        CHECK(r.p_one_sided == doctest::Approx(0.5));
        auto s = t_test_one_sample({1.0, 2.0, 3.0, 4.0}, 2.0);
        CHECK(s.t == doctest::Approx(0.5 / (std::sqrt(5.0 / 3.0) / 2.0)));
        CHECK(s.df == 3);
        CHECK_THROWS_AS(t_test_one_sample({1.0}, 0.0), InsufficientSamples);
    }

    TEST_CASE("Chernoff sample size")
    {
        CHECK(chernoff_samples(0.1, 0.1) == 150);
        CHECK(chernoff_samples(0.05, 0.01) == 1060);
        // smallest integer above log(200) / 0.0002 = 26491.59
        CHECK(chernoff_samples(0.01, 0.01) == 26492);
        CHECK(chernoff_samples(0.02, 0.01) < chernoff_samples(0.01, 0.01));
        CHECK(chernoff_samples(0.01, 0.05) < chernoff_samples(0.01, 0.01));
        for (double e = 0.02; e < 0.5; e += 0.03)
            CHECK(chernoff_samples(e, 0.1) <= chernoff_samples(e - 0.01, 0.1));
        CHECK_THROWS_AS(chernoff_samples(0.0, 0.1), OutOfRange);
        CHECK_THROWS_AS(chernoff_samples(0.1, 1.0), OutOfRange);
    }

    TEST_CASE("empirical probability")
    {
        CHECK(empirical_probability({true, true}) == 1.0);
        CHECK(empirical_probability({true, false, false, true}) == 0.5);
        CHECK_THROWS_AS(empirical_probability({}), EmptyInput);
    }

    TEST_CASE("least squares")
    {
        auto f = fit_line({1.0, 2.0, 3.0}, {5.0, 7.5, 10.0});
        CHECK(std::abs(f.slope - 2.5) <= 1e-12);
        CHECK(std::abs(f.intercept - 2.5) <= 1e-12);
        CHECK(f.r2 == doctest::Approx(1.0));
        auto one = fit_line({4.0}, {9.0});
        CHECK(one.slope == 0.0);
        CHECK(one.intercept == 9.0);
    }

    TEST_CASE("degenerate sweep")
    {
        ExperimentConfig cfg;
        cfg.d = 2;
        cfg.n_list = {3};
        cfg.runs = 1;
        auto r = run_sweep(cfg);
        REQUIRE(r.points.size() == 1);
        CHECK(r.points[0].runs.size() == 1);
        CHECK(r.points[0].runs[0].completed);
        CHECK(r.fit.slope == 0.0);

        auto dir = std::filesystem::temp_directory_path() / "ccon_mc_single";
        auto data = export_plot_data(r, dir);
        CHECK(count_lines(data) == 2);
        CHECK(count_lines(dir / (plot_stem(cfg) + "_fit.csv")) == 2);
    }

    TEST_CASE("line sweep")
    {
        ExperimentConfig cfg;
        cfg.d = 2;
        cfg.n_list = {10, 20, 30};
        cfg.runs = 10;
        cfg.seed = 17;
        auto r = run_sweep(cfg);
        for (const auto& p : r.points) {
            CHECK(p.not_completed == 0);
            CHECK(std::isfinite(p.ratio));
            CHECK(p.mean_diameter == doctest::Approx(static_cast<double>(p.n - 1)));
            CHECK(p.ci_low <= p.mean_completion);
            CHECK(p.ci_high >= p.mean_completion);
        }
        auto dir = std::filesystem::temp_directory_path() / "ccon_mc_line";
        CHECK(count_lines(export_plot_data(r, dir)) == 4);

        // determinism, including under parallel execution
        cfg.jobs = 3;
        auto s = run_sweep(cfg);
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t j = 0; j < cfg.runs; ++j)
                CHECK(r.points[k].runs[j].completion == s.points[k].runs[j].completion);
        CHECK(r.fit.slope == s.fit.slope);
    }

    TEST_CASE("per-run seeds are independent of the sweep shape")
    {
        ExperimentConfig cfg;
        cfg.d = 3;
        cfg.lp = LpModel::B;
        cfg.graph = GraphModel::ErdosRenyi;
        cfg.n_list = {8, 12};
        cfg.runs = 3;
        cfg.seed = 5;
        auto r = run_sweep(cfg);
        CHECK(run_single(cfg, 12, 2).completion == r.points[1].runs[2].completion);
    }

    TEST_CASE("threshold probability on the line")
    {
        ExperimentConfig cfg;
        cfg.d = 2;
        cfg.n_list = {40};
        cfg.runs = 20;
        cfg.seed = 3;
        auto r = run_sweep(cfg);
        std::vector<bool> ind;
        for (const auto& run : r.points[0].runs)
            ind.push_back(run.completed && run.completion <= 4 * 39);
        CHECK(empirical_probability(ind) >= 0.9);
    }

    TEST_CASE("sweep guards")
    {
        ExperimentConfig cfg;
        cfg.d = 2;
        cfg.n_list = {100};
        cfg.runs = 100;
        cfg.budget = 1000;
        CHECK_THROWS_AS(run_sweep(cfg), BudgetExceeded);
        cfg.n_list = {2};
        CHECK_THROWS_AS(run_sweep(cfg), PreconditionError);
        CHECK(parse_graph_model("rgg") == GraphModel::Rgg);
        CHECK_THROWS_AS(parse_lp_model("C"), ParseError);
    }
}
