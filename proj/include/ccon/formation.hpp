#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ccon/geometry.hpp"
#include "ccon/network.hpp"
#include "ccon/rng.hpp"

namespace ccon {

enum class ShapeKind : std::uint8_t { Point, Line, Circle };

const char* to_string(ShapeKind k);
ShapeKind parse_shape_kind(const std::string& s);

// Point: `point`. Line: through `point` with unit direction `dir`.
// Circle: center `point`, radius `radius`.
struct Shape {
    ShapeKind kind = ShapeKind::Point;
    Point2 point;
    Point2 dir{1.0, 0.0};
    double radius = 0.0;
};

struct Disk {
    Point2 center;
    double radius = 0.0;
};

// Disks of radius r_cmm / 2 centered at the midpoints between p and each
// neighbor; keeping both endpoints of an edge inside its disk keeps the edge.
std::vector<Disk> motion_constraint_set(Point2 p, std::span<const Point2> neighbors, double r_cmm);

// The point of [p, q] closest to q inside the intersection of the disks.
// Throws PNotInQ when p is outside one of them.
Point2 fti(Point2 p, Point2 q, std::span<const Disk> Q);

// Shape equidistant from the boundary of the smallest enclosing ball, stripe
// or annulus of the basis points.
Shape target_set(std::span<const Point2> basis, ShapeKind kind);

Point2 closest_point_on_shape(Point2 p, const Shape& s);
double distance_to_shape(Point2 p, const Shape& s);

struct FormationConfig {
    ShapeKind shape = ShapeKind::Point;
    double r_cmm = 1.0;
    double r_ctr = 0.01;
    std::size_t max_rounds = 5000;
    std::vector<Point2> positions;
    // Stop once every robot has halted and sits on its target.
    bool stop_when_settled = true;
};

// n points grown as a random tree with edges shorter than r_cmm, so the disk
// graph is connected.
std::vector<Point2> random_connected_cluster(std::size_t n, double r_cmm, Rng& rng);

struct FormationTrace {
    std::size_t n = 0;
    ShapeKind shape = ShapeKind::Point;
    std::size_t rounds_run = 0;
    std::vector<std::vector<Point2>> positions;           // [t][i]
    std::vector<std::vector<bool>> halted;                // [t][i]
    std::vector<std::vector<std::vector<double>>> values; // [t][i]
    std::vector<std::optional<std::size_t>> halt_round;
    std::vector<double> reference;                        // value of all initial positions
    Shape reference_shape;
    std::optional<std::size_t> consensus_round;           // all values equal the reference
    std::optional<std::size_t> first_halt;
    std::size_t displacement_violations = 0;
    std::size_t edge_violations = 0;       // edges between unhalted robots that broke
    std::size_t post_halt_disconnections = 0; // recorded, not asserted
    double max_step = 0.0;
    double max_final_distance = 0.0;        // to the reference shape
};

// Move-to-consensus-shape: constraints consensus over the current disk graph
// on the initial positions, plus connectivity-preserving motion toward the
// shape of the local basis.
FormationTrace run_move_to_consensus_shape(const FormationConfig& cfg, std::uint64_t seed);

} // namespace ccon
