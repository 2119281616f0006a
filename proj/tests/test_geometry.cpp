#include <doctest.h>

#include <cmath>
#include <random>

#include "ccon/abstract.hpp"
#include "ccon/geometry.hpp"
#include "ccon/rng.hpp"
#include "oracles.hpp"

using namespace ccon;

namespace {

std::vector<Point2> random_points(std::size_t n, Rng& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < n; ++i)
        pts.push_back({u(rng), u(rng)});
    return pts;
}

std::vector<oracle::Pt> to_oracle(const std::vector<Point2>& pts)
{
    std::vector<oracle::Pt> out;
    for (auto p : pts)
        out.push_back({p.x, p.y});
    return out;
}

std::vector<Point2> generic_points(std::size_t n, Rng& rng)
{
    while (true) {
        auto pts = random_points(n, rng);
        if (stripe_generic_check(pts))
            return pts;
    }
}

std::vector<Point2> moved(const std::vector<Point2>& pts, double angle, Point2 shift)
{
    std::vector<Point2> out;
    double c = std::cos(angle), s = std::sin(angle);
    for (auto p : pts)
        out.push_back({c * p.x - s * p.y + shift.x, s * p.x + c * p.y + shift.y});
    return out;
}

} // namespace

TEST_SUITE("geometry")
{
    TEST_CASE("ball examples")
    {
        BallProblem p;
        auto v = p.evaluate(std::vector<Point2>{{0, 0}, {2, 0}});
        CHECK(v.center.x == doctest::Approx(1.0));
        CHECK(v.center.y == doctest::Approx(0.0));
        CHECK(v.radius == doctest::Approx(1.0));

        std::vector<Point2> sq{{-1, -1}, {-1, 1}, {1, -1}, {1, 1}};
        Rng rng(4);
        auto b = subex_lp(p, sq, singleton_basis(p, sq[0]), rng);
        CHECK(b.value.radius == doctest::Approx(std::sqrt(2.0)));
        CHECK(b.value.center.x == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(b.value.center.y == doctest::Approx(0.0).epsilon(1e-12));
        auto s = distinct(b.elements);
        REQUIRE(s.size() == 2);
        CHECK(s[0].x == -s[1].x);
        CHECK(s[0].y == -s[1].y);
        CHECK(b.elements.size() == 3);

        auto col = brute_force_basis(p, std::vector<Point2>{{0, 0}, {1, 0}, {2, 0}});
        CHECK(distinct(col.elements) == std::vector<Point2>{{0, 0}, {2, 0}});
        CHECK(col.elements.size() == 3);
        CHECK(col.value.radius == doctest::Approx(1.0));
    }

    TEST_CASE("circumcircle rejects collinear points")
    {
        CHECK_THROWS_AS(circumcircle({0, 0}, {1, 1}, {2, 2}), DegenerateCircumcircle);
        auto c = circumcircle({1, 0}, {0, 1}, {-1, 0});
        CHECK(c.radius == doctest::Approx(1.0));
    }

    TEST_CASE("ball against Welzl")
    {
        BallProblem p;
        Rng rng(10);
        for (int t = 0; t < 100; ++t) {
            auto pts = random_points(10, rng);
            Rng s(static_cast<std::uint64_t>(t));
            auto b = subex_lp(p, pts, singleton_basis(p, pts[0]), s);
            auto w = oracle::min_circle(to_oracle(pts));
            CHECK(b.value.radius == doctest::Approx(w.r).epsilon(1e-9));
            CHECK(b.value.center.x == doctest::Approx(w.c.x).epsilon(1e-9));
            CHECK(b.value.center.y == doctest::Approx(w.c.y).epsilon(1e-9));
            CHECK(p.compare(b.value, brute_force_basis(p, pts).value) == 0);
            CHECK(distinct(b.elements).size() <= 3);
            for (auto q : pts)
                CHECK(contains(to_ball(b.value), q));
        }
    }

    TEST_CASE("stripe examples")
    {
        StripeProblem p;
        auto v = p.evaluate(std::vector<Point2>{{0, 0}, {4, 0}, {2, 1}});
        CHECK(v.normal.x == doctest::Approx(0.0));
        CHECK(v.normal.y == doctest::Approx(1.0));
        CHECK(v.width == doctest::Approx(1.0));
        CHECK(v.lo == doctest::Approx(0.0));
        CHECK_FALSE(stripe_generic_check(std::vector<Point2>{{0, 0}, {1, 0}, {2, 0}, {3, 0}}));
    }

    TEST_CASE("stripe bases can need more than five points")
    {
        // a stripe-generic hexagon: every five-point subset is strictly narrower
        std::vector<Point2> hex{{-0.88258223315771289, -0.43203013556065939},
                                {-0.66857377479108659, 0.54685171230687857},
                                {-0.25066985940560627, -0.99328003088797934},
                                {0.060171493556415045, 0.74385429997214758},
                                {0.76979000575128298, -0.21130309487989229},
                                {0.78823264977713259, 0.34077748797842755}};
        REQUIRE(stripe_generic_check(hex));
        StripeProblem five;
        auto full = five.evaluate(hex);
        CHECK(full.width == doctest::Approx(1.4766646118328939).epsilon(1e-12));
        for_each_combination(6, 5, [&](std::span<const std::size_t> idx) {
            std::vector<Point2> sub;
            for (auto i : idx)
                sub.push_back(hex[i]);
            CHECK(five.evaluate(sub).width < full.width - 1e-3);
            return false;
        });
        CHECK_THROWS_AS(brute_force_basis(five, hex), DimensionExceeded);
        StripeProblem six(6);
        CHECK(distinct(brute_force_basis(six, hex).elements).size() == 6);
    }

    TEST_CASE("stripe against the hull oracle")
    {
        StripeProblem p(9);
        Rng rng(11);
        for (int t = 0; t < 60; ++t) {
            auto pts = generic_points(9, rng);
            Rng s(static_cast<std::uint64_t>(t));
            auto b = subex_lp(p, pts, singleton_basis(p, pts[3]), s);
            // the basis is minimal: dropping any point narrows the stripe
            auto sup = distinct(b.elements);
            for (std::size_t i = 0; i < sup.size() && sup.size() > 1; ++i) {
                auto rest = sup;
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
                CHECK(p.compare(p.evaluate(rest), b.value) < 0);
            }
            CHECK(b.value.width == doctest::Approx(oracle::min_stripe_width(to_oracle(pts))).epsilon(1e-9));
            CHECK(p.compare(b.value, brute_force_basis(p, pts).value) == 0);
            for (auto q : pts)
                CHECK(contains(to_stripe(b.value), q));
            CHECK(std::abs(norm(b.value.normal) - 1.0) <= 1e-12);
            CHECK((b.value.normal.y > 0.0 || (b.value.normal.y == 0.0 && b.value.normal.x > 0.0)));
        }
    }

    TEST_CASE("stripe ties are rejected")
    {
        StripeProblem p;
        std::vector<Point2> sq{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
        CHECK_THROWS_AS(p.evaluate(sq), NotStripeGeneric);
    }

    TEST_CASE("annulus examples")
    {
        AnnulusProblem p;
        std::vector<Point2> circ{{2, 0}, {0, 2}, {-2, 0}, {std::sqrt(2.0), -std::sqrt(2.0)}};
        auto v = p.evaluate(circ);
        auto a = to_annulus(v);
        CHECK(v.area == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(a.r == doctest::Approx(2.0));
        CHECK(a.R == doctest::Approx(2.0));

        std::vector<Point2> kite{{1, 0}, {-1, 0}, {0, 2}, {0, -2}};
        auto k = p.evaluate(kite);
        auto o = oracle::min_annulus(to_oracle(kite));
        REQUIRE(o.has_value());
        CHECK(k.area == doctest::Approx(o->area));
        CHECK(k.area == doctest::Approx(3.0));

        Rng rng(1);
        auto B = subex_lp(p, kite, singleton_basis(p, kite[0]), rng);
        auto ann = to_annulus(B.value);
        Point2 inside{ann.center.x + 0.5 * (ann.r + ann.R), ann.center.y};
        CHECK_FALSE(p.violates(B, inside));
        CHECK(p.violates(B, Point2{10.0, 10.0}));
    }

    TEST_CASE("annulus candidate enumeration equals the linear program")
    {
        AnnulusProblem p;
        Rng rng(12);
        for (int t = 0; t < 60; ++t) {
            auto pts = random_points(3 + static_cast<std::size_t>(t % 5), rng);
            auto g = p.evaluate(pts);
            auto l = p.evaluate_lp(pts);
            CHECK(p.compare(g, l) == 0);
        }
        // degenerate inputs take the linear-program route directly
        std::vector<Point2> two{{0, 0}, {1, 0}};
        CHECK(p.evaluate(two).area == doctest::Approx(0.0));
    }

    TEST_CASE("annulus against the vertex-enumeration oracle")
    {
        AnnulusProblem p;
        Rng rng(13);
        for (int t = 0; t < 20; ++t) {
            auto pts = random_points(10, rng);
            Rng s(static_cast<std::uint64_t>(t));
            auto b = subex_lp(p, pts, singleton_basis(p, pts[0]), s);
            auto o = oracle::min_annulus(to_oracle(pts));
            REQUIRE(o.has_value());
            CHECK(b.value.area == doctest::Approx(o->area).epsilon(1e-8));
            CHECK(b.value.center.x == doctest::Approx(o->center.x).epsilon(1e-8));
            CHECK(b.value.center.y == doctest::Approx(o->center.y).epsilon(1e-8));
            CHECK(p.compare(b.value, brute_force_basis(p, pts).value) == 0);
            CHECK(distinct(b.elements).size() <= 4);
            auto a = to_annulus(b.value);
            for (auto q : pts)
                CHECK(contains(a, q));
        }
    }

    TEST_CASE("axioms on random point sets")
    {
        Rng rng(14);
        for (int t = 0; t < 3; ++t) {
            auto pts = random_points(8, rng);
            Rng s1(1), s2(2);
            BallProblem bp;
            auto rb = check_axioms(bp, std::span<const Point2>(pts), 500, s1);
            CHECK_MESSAGE(rb.pass, rb.witness);
            AnnulusProblem ap;
            auto ra = check_axioms(ap, std::span<const Point2>(pts), 500, s2);
            CHECK_MESSAGE(ra.pass, ra.witness);
            auto gp = generic_points(8, rng);
            StripeProblem sp(8);
            Rng s3(3);
            auto rs = check_axioms(sp, std::span<const Point2>(gp), 500, s3);
            CHECK_MESSAGE(rs.pass, rs.witness);
        }
    }

    TEST_CASE("cocircular triple is persistent")
    {
        BallProblem p;
        std::vector<Point2> tri{{1, 0}, {-0.5, std::sqrt(3.0) / 2}, {-0.5, -std::sqrt(3.0) / 2}};
        CHECK(persistency_check(p, tri).persistent);
    }

    TEST_CASE("values are invariant under rigid motion")
    {
        Rng rng(15);
        BallProblem bp;
        StripeProblem sp;
        AnnulusProblem ap;
        for (int t = 0; t < 20; ++t) {
            auto pts = generic_points(7, rng);
            auto mv = moved(pts, 0.3 + t, {2.0, -1.5});
            CHECK(std::abs(bp.evaluate(pts).radius - bp.evaluate(mv).radius) <= 1e-7);
            CHECK(std::abs(sp.evaluate(pts).width - sp.evaluate(mv).width) <= 1e-7);
            CHECK(std::abs(ap.evaluate(pts).area - ap.evaluate(mv).area) <= 1e-7);
        }
    }

    TEST_CASE("stripe-generic position")
    {
        CHECK(stripe_generic_check(std::vector<Point2>{{0, 0}, {1, 0}, {0.3, 0.7}}));
        CHECK_FALSE(stripe_generic_check(std::vector<Point2>{{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
        CHECK_FALSE(stripe_generic_check(std::vector<Point2>{{0, 0}, {1, 1}, {2, 2}, {0.3, 0.9}}));
        CHECK_THROWS_AS(stripe_generic_check(std::vector<Point2>{{0, 0}, {0, 0}, {1, 1}}), DuplicatePoints);
        std::vector<Point2> many(61);
        for (std::size_t i = 0; i < many.size(); ++i)
            many[i] = {static_cast<double>(i), static_cast<double>(i * i)};
        CHECK_THROWS_AS(stripe_generic_check(many), TooLarge);
    }
}
