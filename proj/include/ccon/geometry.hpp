#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "ccon/abstract.hpp"

namespace ccon {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    auto operator<=>(const Point2&) const = default;
    bool operator==(const Point2&) const = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double norm(Point2 a);
double dist(Point2 a, Point2 b);

struct Ball {
    Point2 center;
    double radius = 0.0;
};

struct Stripe {
    Point2 normal{1.0, 0.0};
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
};

struct Annulus {
    Point2 center;
    double r = 0.0;
    double R = 0.0;
};

inline constexpr double kGeoTol = 1e-9;

bool contains(const Ball& b, Point2 p, double tol = kGeoTol);
bool contains(const Stripe& s, Point2 p, double tol = kGeoTol);
bool contains(const Annulus& a, Point2 p, double tol = kGeoTol);

// Circle through three points; throws DegenerateCircumcircle when collinear.
Ball circumcircle(Point2 a, Point2 b, Point2 c);

enum class GeoKind : std::uint8_t { Empty, Finite };

// Ordered by (radius, center.x, center.y).
struct BallValue {
    GeoKind kind = GeoKind::Empty;
    double radius = 0.0;
    Point2 center;
};

// Ordered by (width, angle of the normal in [0, pi), lo). A single point uses
// the normal (1, 0), whose angle 0 is below every other.
struct StripeValue {
    GeoKind kind = GeoKind::Empty;
    double width = 0.0;
    double angle = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    Point2 normal{1.0, 0.0};
};

// Linearized annulus: g(p) = |p|^2 - 2 c·p, v <= g(p_i) <= u for all points.
// Ordered by (u - v, c.x, c.y, v).
struct AnnulusValue {
    GeoKind kind = GeoKind::Empty;
    double area = 0.0; // u - v = R^2 - r^2
    Point2 center;
    double u = 0.0;
    double v = 0.0;
};

Ball to_ball(const BallValue& v);
Stripe to_stripe(const StripeValue& v);
Annulus to_annulus(const AnnulusValue& v);

class BallProblem {
public:
    using Constraint = Point2;
    using Value = BallValue;

    std::size_t delta() const { return 3; }
    BallValue evaluate(std::span<const Point2> pts) const;
    std::weak_ordering compare(const BallValue& a, const BallValue& b) const;
    bool is_finite(const BallValue& v) const { return v.kind == GeoKind::Finite; }
    bool violates(const Basis<Point2, BallValue>& b, Point2 p) const;
    Basis<Point2, BallValue> basis_computation(const Basis<Point2, BallValue>& b, Point2 p) const;
};

// Bases of the width problem are not bounded by a constant: a convex polygon
// may need every vertex to pin its width. The capacity is therefore a
// parameter; 5 is the nominal value and callers solving sets of n points
// pass n.
class StripeProblem {
public:
    using Constraint = Point2;
    using Value = StripeValue;

    explicit StripeProblem(std::size_t capacity = 5) : capacity_(capacity) {}

    std::size_t delta() const { return capacity_; }
    StripeValue evaluate(std::span<const Point2> pts) const;
    std::weak_ordering compare(const StripeValue& a, const StripeValue& b) const;
    bool is_finite(const StripeValue& v) const { return v.kind == GeoKind::Finite; }
    bool violates(const Basis<Point2, StripeValue>& b, Point2 p) const;
    Basis<Point2, StripeValue> basis_computation(const Basis<Point2, StripeValue>& b, Point2 p) const;

private:
    std::size_t capacity_;
};

class AnnulusProblem {
public:
    using Constraint = Point2;
    using Value = AnnulusValue;

    std::size_t delta() const { return 4; }
    AnnulusValue evaluate(std::span<const Point2> pts) const;
    std::weak_ordering compare(const AnnulusValue& a, const AnnulusValue& b) const;
    bool is_finite(const AnnulusValue& v) const { return v.kind == GeoKind::Finite; }
    bool violates(const Basis<Point2, AnnulusValue>& b, Point2 p) const;
    Basis<Point2, AnnulusValue> basis_computation(const Basis<Point2, AnnulusValue>& b, Point2 p) const;

    // The same value computed through the four-variable linear program; used
    // for degenerate inputs and as a cross-check.
    AnnulusValue evaluate_lp(std::span<const Point2> pts) const;
};

inline constexpr std::size_t kStripeGenericLimit = 60;

// True iff the distances dist(p_a, line(p_b, p_c)) over all apexes a and
// unordered pairs {b, c} not containing a are pairwise distinct.
bool stripe_generic_check(std::span<const Point2> pts);

} // namespace ccon
