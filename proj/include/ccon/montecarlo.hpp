#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ccon/consensus.hpp"

namespace ccon {

enum class GraphModel : std::uint8_t { Line, ErdosRenyi, Rgg };
enum class LpModel : std::uint8_t { A, B };

const char* to_string(GraphModel m);
const char* to_string(LpModel m);
GraphModel parse_graph_model(const std::string& s);
LpModel parse_lp_model(const std::string& s);

struct ExperimentConfig {
    GraphModel graph = GraphModel::Line;
    LpModel lp = LpModel::A;
    std::size_t d = 2;
    std::vector<std::size_t> n_list;
    std::size_t runs = 10;
    std::uint64_t seed = 0;
    HaltingPolicy halting;
    double er_epsilon = 0.3;
    // Rounds allowed per run: max_rounds_per_node * n + 50.
    std::size_t max_rounds_per_node = 20;
    // Guard on max(n) * runs * |n_list|.
    std::uint64_t budget = 2'000'000;
    std::size_t jobs = 1;
};

struct RunRecord {
    std::size_t completion = 0; // rounds_run when the run did not complete
    bool completed = false;
    std::size_t diameter = 0;
};

struct PointResult {
    std::size_t n = 0;
    std::vector<RunRecord> runs;
    double mean_completion = 0.0;
    double std_completion = 0.0;
    double mean_diameter = 0.0;
    double ratio = 0.0; // mean over runs of completion / diameter
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t not_completed = 0;

    std::vector<double> ratios() const;
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 1.0;
};

struct SweepResult {
    ExperimentConfig config;
    std::vector<PointResult> points;
    LineFit fit; // mean completion against n
};

// One completion-time sample; seeds derive from (seed, n, run).
RunRecord run_single(const ExperimentConfig& cfg, std::size_t n, std::size_t run);

SweepResult run_sweep(const ExperimentConfig& cfg);

// Fills the aggregate fields of a point from its runs.
void summarize(PointResult& pt);

// Ordinary least squares; a single point (or constant x) gives slope 0.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct TTestResult {
    double t = 0.0;
    std::size_t df = 0;
    double p_one_sided = 0.0; // P(T <= t)
};

TTestResult t_test_one_sample(const std::vector<double>& samples, double mu0);
// Left tail of the Student t distribution.
double student_t_cdf(double t, double df);

std::size_t chernoff_samples(double epsilon, double eta);
double empirical_probability(const std::vector<bool>& indicators);

// Writes <stem>.csv and <stem>_fit.csv into dir; returns the data file path.
std::filesystem::path export_plot_data(const SweepResult& r, const std::filesystem::path& dir);
std::string plot_stem(const ExperimentConfig& cfg);

} // namespace ccon
