#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ccon/geometry.hpp"
#include "ccon/lp.hpp"
#include "ccon/network.hpp"
#include "ccon/rng.hpp"

namespace ccon {

struct Box2 {
    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;

    bool contains(Point2 p, double tol = 0.0) const
    {
        return p.x >= xmin - tol && p.x <= xmax + tol && p.y >= ymin - tol && p.y <= ymax + tol;
    }
};

// The four box edges as unit half-planes: x <= xmax, -x <= -xmin, y <= ymax,
// -y <= -ymin.
std::vector<HalfSpace> box_half_planes(const Box2& box);

// Planar half-plane {x : a·x <= b} with unit normal.
HalfSpace unit_half_plane(Point2 a, double b);
bool plane_contains(const HalfSpace& h, Point2 p, double tol = 1e-9);

// Random walk with step length uniform in [0, v_max] and uniform heading,
// folded back into the box. Returns steps + 1 positions.
std::vector<Point2> simulate_target(std::size_t steps, double v_max, const Box2& box, Rng& rng,
                                    std::optional<Point2> start = std::nullopt);

// Half-plane with uniformly random normal whose boundary lies between 0 and
// w_max beyond the target.
HalfSpace sense(Point2 target, Rng& rng, double w_max);

HalfSpace time_update(const HalfSpace& h, double v_max);

struct Projection {
    // Two planes per direction, direction k at angle 2 pi k / directions.
    std::vector<HalfSpace> planes;
    // Optimal value max_x (cos t, sin t)·x per direction.
    std::vector<double> support;
};

// Over-approximates H ∩ box by the active constraints of one planar linear
// program per direction. Throws InfeasibleError when H ∩ box is empty.
Projection pi_lp(std::span<const HalfSpace> H, const Box2& box, std::size_t directions = 4);

// Set-membership recursion with full information. measurements[t] holds all
// half-planes sensed at step t; returns the estimate after each step.
std::vector<Projection> centralized_recursion(const std::vector<std::vector<HalfSpace>>& measurements, double v_max,
                                              const Box2& box, std::size_t directions = 4);

struct LocalizationConfig {
    Box2 box;
    double v_max = 0.0;
    double noise = 0.1;    // w_max of the sensors
    std::size_t m = 1;     // measurements kept per node
    std::size_t rounds = 30;
    // Sense every k rounds; 0 senses only at round 0.
    std::size_t sense_every = 1;
    std::size_t directions = 4;
    std::uint64_t seed = 0;
    std::optional<Point2> start;
};

struct LocalizationTrace {
    std::size_t n = 0;
    std::vector<Point2> target;                              // [t]
    std::vector<std::vector<std::vector<HalfSpace>>> planes; // [t][i]
    std::vector<std::vector<std::vector<double>>> support;   // [t][i][direction]
    std::vector<std::vector<HalfSpace>> measurements;        // [t]: what each node sensed, empty if none
    std::size_t containment_violations = 0;
    std::vector<std::size_t> memory_high_water;
    std::vector<std::size_t> memory_bound;
    std::vector<HalfSpace> centralized_initial; // Π_LP of every round-0 measurement
    // First round at which every node holds exactly the centralized estimate
    // (meaningful for a static target sensed once).
    std::optional<std::size_t> convergence_round;
};

// Distributed eight half-planes algorithm over a static graph: in each round
// every node exchanges its planes, time-translates everything it stores by
// v_max, optionally senses, and re-projects.
LocalizationTrace run_eight_half_planes(const TimeVaryingDigraph& g, const LocalizationConfig& cfg);

} // namespace ccon
