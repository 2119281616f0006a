#include "ccon/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "ccon/lp.hpp"

namespace ccon {

namespace {

std::weak_ordering cmp_num(double a, double b)
{
    if (approx_equal(a, b))
        return std::weak_ordering::equivalent;
    return a < b ? std::weak_ordering::less : std::weak_ordering::greater;
}

std::weak_ordering cmp_kind(GeoKind a, GeoKind b)
{
    if (a == b)
        return std::weak_ordering::equivalent;
    return a == GeoKind::Empty ? std::weak_ordering::less : std::weak_ordering::greater;
}

std::vector<Point2> sorted_distinct(std::span<const Point2> pts)
{
    return distinct(pts);
}

double tol_of(double scale)
{
    return kGeoTol * std::max(1.0, std::abs(scale));
}

bool encloses(const Ball& b, const std::vector<Point2>& pts)
{
    for (auto p : pts)
        if (!contains(b, p))
            return false;
    return true;
}

bool collinear(Point2 a, Point2 b, Point2 c)
{
    double s = std::max({norm(b - a), norm(c - a), 1.0});
    return std::abs(cross(b - a, c - a)) <= 1e-12 * s * s;
}

bool all_collinear(const std::vector<Point2>& pts)
{
    if (pts.size() < 3)
        return true;
    // pick the farthest point from pts[0] as the second anchor
    std::size_t far = 1;
    for (std::size_t i = 2; i < pts.size(); ++i)
        if (dist(pts[0], pts[i]) > dist(pts[0], pts[far]))
            far = i;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (!collinear(pts[0], pts[far], pts[i]))
            return false;
    return true;
}

template <class P>
Basis<Point2, typename P::Value> padded(const P& p, std::vector<Point2> s, typename P::Value v)
{
    Basis<Point2, typename P::Value> b;
    b.elements = std::move(s);
    b.value = v;
    while (b.elements.size() < p.delta())
        b.elements.push_back(b.elements.back());
    return b;
}

StripeValue stripe_for(Point2 normal, const std::vector<Point2>& pts)
{
    StripeValue v;
    v.kind = GeoKind::Finite;
    v.normal = normal;
    v.angle = std::atan2(normal.y, normal.x);
    v.lo = v.hi = dot(normal, pts[0]);
    for (auto p : pts) {
        double s = dot(normal, p);
        v.lo = std::min(v.lo, s);
        v.hi = std::max(v.hi, s);
    }
    v.width = v.hi - v.lo;
    return v;
}

// Unit normal of the line through a and b, in the upper half-plane.
Point2 canonical_normal(Point2 a, Point2 b)
{
    Point2 d = b - a;
    double n = norm(d);
    Point2 nv{-d.y / n, d.x / n};
    if (nv.y < 0.0 || (nv.y == 0.0 && nv.x < 0.0))
        nv = {-nv.x, -nv.y};
    if (nv.y == 0.0)
        nv.y = 0.0; // drop a negative zero
    return nv;
}

AnnulusValue annulus_at(Point2 c, const std::vector<Point2>& pts)
{
    AnnulusValue v;
    v.kind = GeoKind::Finite;
    v.center = c;
    bool first = true;
    for (auto p : pts) {
        double g = dot(p, p) - 2.0 * dot(c, p);
        if (first) {
            v.u = v.v = g;
            first = false;
        }
        v.u = std::max(v.u, g);
        v.v = std::min(v.v, g);
    }
    v.area = v.u - v.v;
    return v;
}

// Intersection of the perpendicular bisectors of (a,b) and (c,d), if unique.
bool bisector_intersection(Point2 a, Point2 b, Point2 c, Point2 d, Point2& out)
{
    // |x-a|^2 = |x-b|^2  <=>  2(b-a)·x = |b|^2 - |a|^2
    Point2 n1 = b - a, n2 = d - c;
    double r1 = 0.5 * (dot(b, b) - dot(a, a));
    double r2 = 0.5 * (dot(d, d) - dot(c, c));
    double det = cross(n1, n2);
    double scale = norm(n1) * norm(n2);
    if (std::abs(det) <= 1e-12 * scale)
        return false;
    out = {(r1 * n2.y - r2 * n1.y) / det, (n1.x * r2 - n2.x * r1) / det};
    return true;
}

} // namespace

double norm(Point2 a)
{
    return std::hypot(a.x, a.y);
}

double dist(Point2 a, Point2 b)
{
    return norm(a - b);
}

bool contains(const Ball& b, Point2 p, double tol)
{
    return dist(b.center, p) <= b.radius + tol * std::max(1.0, b.radius);
}

bool contains(const Stripe& s, Point2 p, double tol)
{
    double t = dot(s.normal, p);
    double eps = tol * std::max({1.0, std::abs(s.lo), std::abs(s.hi)});
    return t >= s.lo - eps && t <= s.hi + eps;
}

bool contains(const Annulus& a, Point2 p, double tol)
{
    double r = dist(a.center, p);
    double eps = tol * std::max(1.0, a.R);
    return r >= a.r - eps && r <= a.R + eps;
}

Ball circumcircle(Point2 a, Point2 b, Point2 c)
{
    Point2 ab = b - a, ac = c - a;
    double d = 2.0 * cross(ab, ac);
    if (collinear(a, b, c))
        throw DegenerateCircumcircle("circumcircle of collinear points");
    double ab2 = dot(ab, ab), ac2 = dot(ac, ac);
    Point2 off{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
    Ball out{a + off, 0.0};
    out.radius = std::max({dist(out.center, a), dist(out.center, b), dist(out.center, c)});
    return out;
}

Ball to_ball(const BallValue& v)
{
    return Ball{v.center, v.radius};
}

Stripe to_stripe(const StripeValue& v)
{
    return Stripe{v.normal, v.lo, v.hi};
}

Annulus to_annulus(const AnnulusValue& v)
{
    double c2 = dot(v.center, v.center);
    double r2 = v.v + c2;
    double R2 = v.u + c2;
    double eps = 1e-9 * std::max(1.0, c2);
    if (r2 < -eps)
        throw NegativeRadicand("annulus inner radius squared is negative");
    return Annulus{v.center, std::sqrt(std::max(0.0, r2)), std::sqrt(std::max(0.0, R2))};
}

// --- smallest enclosing ball ---------------------------------------------

BallValue BallProblem::evaluate(std::span<const Point2> in) const
{
    auto pts = sorted_distinct(in);
    BallValue best;
    if (pts.empty())
        return best;
    if (pts.size() == 1) {
        best.kind = GeoKind::Finite;
        best.center = pts[0];
        return best;
    }
    auto consider = [&](const Ball& b) {
        if (!encloses(b, pts))
            return;
        BallValue v{GeoKind::Finite, b.radius, b.center};
        if (best.kind == GeoKind::Empty || compare(v, best) < 0)
            best = v;
    };
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            consider(Ball{0.5 * (pts[i] + pts[j]), 0.5 * dist(pts[i], pts[j])});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                if (!collinear(pts[i], pts[j], pts[k]))
                    consider(circumcircle(pts[i], pts[j], pts[k]));
    return best;
}

std::weak_ordering BallProblem::compare(const BallValue& a, const BallValue& b) const
{
    if (auto c = cmp_kind(a.kind, b.kind); c != 0 || a.kind == GeoKind::Empty)
        return c;
    if (auto c = cmp_num(a.radius, b.radius); c != 0)
        return c;
    if (auto c = cmp_num(a.center.x, b.center.x); c != 0)
        return c;
    return cmp_num(a.center.y, b.center.y);
}

bool BallProblem::violates(const Basis<Point2, BallValue>& b, Point2 p) const
{
    if (b.value.kind == GeoKind::Empty)
        return true;
    return !contains(to_ball(b.value), p);
}

Basis<Point2, BallValue> BallProblem::basis_computation(const Basis<Point2, BallValue>& b, Point2 p) const
{
    if (!violates(b, p))
        return b;
    return enumerate_basis_computation(*this, b, p);
}

// --- smallest enclosing stripe ---------------------------------------------

StripeValue StripeProblem::evaluate(std::span<const Point2> in) const
{
    auto pts = sorted_distinct(in);
    StripeValue best;
    if (pts.empty())
        return best;
    if (pts.size() == 1)
        return stripe_for(Point2{1.0, 0.0}, pts);
    bool tie = false;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            auto v = stripe_for(canonical_normal(pts[i], pts[j]), pts);
            if (best.kind == GeoKind::Empty) {
                best = v;
                continue;
            }
            auto w = cmp_num(v.width, best.width);
            if (w == 0 && std::abs(v.angle - best.angle) > 1e-9)
                tie = true;
            if (compare(v, best) < 0) {
                if (w < 0)
                    tie = false;
                best = v;
            }
        }
    }
    if (tie && n >= 3)
        throw NotStripeGeneric("two stripe directions attain the minimum width");
    return best;
}

std::weak_ordering StripeProblem::compare(const StripeValue& a, const StripeValue& b) const
{
    if (auto c = cmp_kind(a.kind, b.kind); c != 0 || a.kind == GeoKind::Empty)
        return c;
    if (auto c = cmp_num(a.width, b.width); c != 0)
        return c;
    if (std::abs(a.angle - b.angle) > 1e-9)
        return a.angle < b.angle ? std::weak_ordering::less : std::weak_ordering::greater;
    return cmp_num(a.lo, b.lo);
}

bool StripeProblem::violates(const Basis<Point2, StripeValue>& b, Point2 p) const
{
    if (b.value.kind == GeoKind::Empty)
        return true;
    return !contains(to_stripe(b.value), p);
}

Basis<Point2, StripeValue> StripeProblem::basis_computation(const Basis<Point2, StripeValue>& b, Point2 p) const
{
    if (!violates(b, p))
        return b;
    return enumerate_basis_computation(*this, b, p);
}

// --- smallest enclosing annulus --------------------------------------------

AnnulusValue AnnulusProblem::evaluate(std::span<const Point2> in) const
{
    auto pts = sorted_distinct(in);
    if (pts.empty())
        return AnnulusValue{};
    if (all_collinear(pts))
        return evaluate_lp(pts);

    // The optimum of the linear program is a vertex: its center is either
    // equidistant from three points or on two perpendicular bisectors.
    AnnulusValue best;
    auto consider = [&](Point2 c) {
        auto v = annulus_at(c, pts);
        if (best.kind == GeoKind::Empty || compare(v, best) < 0)
            best = v;
    };
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                if (!collinear(pts[i], pts[j], pts[k]))
                    consider(circumcircle(pts[i], pts[j], pts[k]).center);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            pairs.emplace_back(i, j);
    for (std::size_t s = 0; s < pairs.size(); ++s) {
        for (std::size_t t = s + 1; t < pairs.size(); ++t) {
            auto [a, b] = pairs[s];
            auto [c, d] = pairs[t];
            if (a == c || a == d || b == c || b == d)
                continue; // shared point: a circumcenter, already covered
            Point2 x;
            if (bisector_intersection(pts[a], pts[b], pts[c], pts[d], x))
                consider(x);
        }
    }
    return best;
}

AnnulusValue AnnulusProblem::evaluate_lp(std::span<const Point2> in) const
{
    auto pts = sorted_distinct(in);
    if (pts.empty())
        return AnnulusValue{};
    std::vector<HalfSpace> hs;
    for (auto p : pts) {
        double p2 = dot(p, p);
        hs.push_back(HalfSpace::make({-2.0 * p.x, -2.0 * p.y, -1.0, 0.0}, -p2));
        hs.push_back(HalfSpace::make({2.0 * p.x, 2.0 * p.y, 0.0, 1.0}, p2));
    }
    LexOrder order;
    order.dim = 4;
    order.rows = {VecD{0.0, 0.0, 1.0, -1.0}, VecD{1.0, 0.0, 0.0, 0.0}, VecD{0.0, 1.0, 0.0, 0.0},
                  VecD{0.0, 0.0, 0.0, 1.0}};
    BoxSpec box;
    box.mask = 0b0011;
    auto lv = lex_min_point(hs, order, box);
    AnnulusValue v;
    v.kind = GeoKind::Finite;
    v.center = {lv.point[0], lv.point[1]};
    v.u = lv.point[2];
    v.v = lv.point[3];
    v.area = v.u - v.v;
    return v;
}

std::weak_ordering AnnulusProblem::compare(const AnnulusValue& a, const AnnulusValue& b) const
{
    if (auto c = cmp_kind(a.kind, b.kind); c != 0 || a.kind == GeoKind::Empty)
        return c;
    // u - v is a difference of terms that can be much larger than itself
    double scale = std::max({std::abs(a.u), std::abs(a.v), std::abs(b.u), std::abs(b.v), 1.0});
    if (std::abs(a.area - b.area) > kGeoTol * scale)
        return a.area < b.area ? std::weak_ordering::less : std::weak_ordering::greater;
    if (auto c = cmp_num(a.center.x, b.center.x); c != 0)
        return c;
    if (auto c = cmp_num(a.center.y, b.center.y); c != 0)
        return c;
    return cmp_num(a.v, b.v);
}

bool AnnulusProblem::violates(const Basis<Point2, AnnulusValue>& b, Point2 p) const
{
    if (b.value.kind == GeoKind::Empty)
        return true;
    double g = dot(p, p) - 2.0 * dot(b.value.center, p);
    double eps = tol_of(std::max({std::abs(b.value.u), std::abs(b.value.v), std::abs(g)}));
    return g > b.value.u + eps || g < b.value.v - eps;
}

Basis<Point2, AnnulusValue> AnnulusProblem::basis_computation(const Basis<Point2, AnnulusValue>& b, Point2 p) const
{
    if (!violates(b, p))
        return b;
    return enumerate_basis_computation(*this, b, p);
}

// --- stripe-generic position ---------------------------------------------

bool stripe_generic_check(std::span<const Point2> in)
{
    std::vector<Point2> pts(in.begin(), in.end());
    if (pts.size() > kStripeGenericLimit)
        throw TooLarge("stripe_generic_check: more than 60 points");
    auto sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DuplicatePoints("stripe_generic_check: duplicate points");
    const std::size_t n = pts.size();
    std::vector<double> d;
    for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = b + 1; c < n; ++c) {
            Point2 dir = pts[c] - pts[b];
            double len = norm(dir);
            for (std::size_t a = 0; a < n; ++a)
                if (a != b && a != c)
                    d.push_back(std::abs(cross(dir, pts[a] - pts[b])) / len);
        }
    }
    std::sort(d.begin(), d.end());
    for (std::size_t i = 1; i < d.size(); ++i)
        if (d[i] - d[i - 1] <= kGeoTol)
            return false;
    return true;
}

} // namespace ccon
