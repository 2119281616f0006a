#include <doctest.h>

#include <cmath>

#include "ccon/localization.hpp"
#include "oracles.hpp"

using namespace ccon;

namespace {

// Halton sequence in bases 2 and 3, scaled to the box.
std::vector<Point2> halton(std::size_t k, const Box2& box)
{
    auto radical = [](std::size_t i, std::size_t base) {
        double f = 1.0, r = 0.0;
        while (i > 0) {
            f /= static_cast<double>(base);
            r += f * static_cast<double>(i % base);
            i /= base;
        }
        return r;
    };
    std::vector<Point2> out;
    for (std::size_t i = 1; i <= k; ++i)
        out.push_back({box.xmin + radical(i, 2) * (box.xmax - box.xmin), box.ymin + radical(i, 3) * (box.ymax - box.ymin)});
    return out;
}

bool inside_all(std::span<const HalfSpace> H, Point2 p, double tol = 1e-12)
{
    for (const auto& h : H)
        if (!plane_contains(h, p, tol))
            return false;
    return true;
}

} // namespace

TEST_SUITE("localization")
{
    TEST_CASE("target simulation")
    {
        Box2 box{-1, 1, -2, 2};
        Rng rng(1);
        auto still = simulate_target(20, 0.0, box, rng);
        for (auto p : still)
            CHECK(p == still[0]);
        auto walk = simulate_target(500, 0.3, box, rng);
        CHECK(walk.size() == 501);
        for (std::size_t t = 1; t < walk.size(); ++t) {
            CHECK(dist(walk[t], walk[t - 1]) <= 0.3 + 1e-12);
            CHECK(box.contains(walk[t]));
        }
    }

    TEST_CASE("sensing")
    {
        Rng rng(2);
        Point2 p{0.3, -0.2};
        auto h = sense(p, rng, 0.0);
        CHECK(std::abs(h.a[0] * p.x + h.a[1] * p.y - h.b) <= 1e-15);
        std::vector<HalfSpace> H;
        for (int k = 0; k < 50; ++k) {
            H.push_back(sense(p, rng, 0.2));
            CHECK(plane_contains(H.back(), p, 0.0));
            CHECK(std::hypot(H.back().a[0], H.back().a[1]) == doctest::Approx(1.0).epsilon(1e-15));
        }
        CHECK(inside_all(H, p, 0.0));
    }

    TEST_CASE("time update")
    {
        auto h = unit_half_plane({0.6, 0.8}, 1.0);
        CHECK(time_update(h, 0.0) == h);
        CHECK(time_update(time_update(h, 0.25), 0.25).b == doctest::Approx(1.5));
        Point2 x{0.6, 0.8};
        CHECK(plane_contains(h, x));
        CHECK(plane_contains(time_update(h, 0.1), x));
    }

    TEST_CASE("projection of a rectangle")
    {
        Box2 box{-5, 5, -5, 5};
        std::vector<HalfSpace> rect{unit_half_plane({1, 0}, 1), unit_half_plane({-1, 0}, 2),
                                    unit_half_plane({0, 1}, 3), unit_half_plane({0, -1}, 0.5)};
        auto pr = pi_lp(rect, box);
        REQUIRE(pr.planes.size() == 8);
        for (const auto& h : rect)
            CHECK(std::count(pr.planes.begin(), pr.planes.end(), h) == 2);
        CHECK(pr.support == std::vector<double>{1.0, 3.0, 2.0, 0.5});
    }

    TEST_CASE("projection contains the input and lies in its bounding box")
    {
        Box2 box{0, 4, 0, 3};
        Rng rng(7);
        auto pts = halton(1000, box);
        for (int trial = 0; trial < 20; ++trial) {
            Point2 target{0.5 + 3.0 * std::uniform_real_distribution<double>(0, 1)(rng),
                          0.5 + 2.0 * std::uniform_real_distribution<double>(0, 1)(rng)};
            std::vector<HalfSpace> H;
            for (int k = 0; k < 6; ++k)
                H.push_back(sense(target, rng, 0.8));
            auto pr = pi_lp(H, box);
            auto bx = box_half_planes(box);
            // exact bounding box of H ∩ box via the independent vertex oracle
            std::vector<Eigen::VectorXd> A;
            std::vector<double> b;
            for (const auto* set : {&H, &bx})
                for (const auto& h : *set) {
                    Eigen::VectorXd a(2);
                    a << h.a[0], h.a[1];
                    A.push_back(a);
                    b.push_back(h.b);
                }
            double lo[2], hi[2];
            for (int axis = 0; axis < 2; ++axis)
                for (int sgn : {1, -1}) {
                    Eigen::VectorXd c = Eigen::VectorXd::Zero(2), e2 = Eigen::VectorXd::Zero(2);
                    c[axis] = sgn;
                    e2[1 - axis] = 1;
                    auto x = oracle::lp_lexmin(A, b, {c, e2}, 0b11);
                    REQUIRE(x.has_value());
                    (sgn > 0 ? lo : hi)[axis] = (*x)[axis];
                }
            CHECK(pr.support[0] == doctest::Approx(hi[0]));
            CHECK(pr.support[1] == doctest::Approx(hi[1]));
            CHECK(-pr.support[2] == doctest::Approx(lo[0]));
            CHECK(-pr.support[3] == doctest::Approx(lo[1]));
            for (auto p : pts) {
                bool in_H = inside_all(H, p, 0.0);
                bool in_pr = inside_all(pr.planes, p, 1e-12);
                if (in_H)
                    CHECK(in_pr);
                if (in_pr) {
                    CHECK(p.x <= hi[0] + 1e-9);
                    CHECK(p.x >= lo[0] - 1e-9);
                    CHECK(p.y <= hi[1] + 1e-9);
                    CHECK(p.y >= lo[1] - 1e-9);
                }
            }
        }
    }

    TEST_CASE("projection rejects inconsistent measurements")
    {
        Box2 box{-1, 1, -1, 1};
        std::vector<HalfSpace> H{unit_half_plane({1, 0}, -0.5), unit_half_plane({-1, 0}, -0.5)};
        CHECK_THROWS_AS(pi_lp(H, box), InfeasibleError);
    }

    TEST_CASE("centralized recursion")
    {
        Box2 box{-2, 2, -2, 2};
        Rng rng(11);
        Point2 p{0.1, 0.4};
        auto h = sense(p, rng, 0.3);
        std::vector<std::vector<HalfSpace>> stream(5, std::vector<HalfSpace>{h});
        auto est = centralized_recursion(stream, 0.0, box);
        for (std::size_t t = 1; t < est.size(); ++t)
            CHECK(est[t].planes == est[0].planes);

        std::vector<HalfSpace> all;
        for (int k = 0; k < 8; ++k)
            all.push_back(sense(p, rng, 0.3));
        auto e0 = centralized_recursion({all}, 0.0, box);
        CHECK(e0[0].planes == pi_lp(all, box).planes);

        // moving target stays inside every estimate
        auto traj = simulate_target(40, 0.05, box, rng);
        std::vector<std::vector<HalfSpace>> meas;
        for (auto q : traj) {
            std::vector<HalfSpace> m;
            for (int k = 0; k < 3; ++k)
                m.push_back(sense(q, rng, 0.2));
            meas.push_back(m);
        }
        auto track = centralized_recursion(meas, 0.05, box);
        for (std::size_t t = 0; t < traj.size(); ++t)
            CHECK(inside_all(track[t].planes, traj[t], 1e-9));
    }

    TEST_CASE("distributed static target converges to the centralized estimate")
    {
        LocalizationConfig cfg;
        cfg.box = {-1, 1, -1, 1};
        cfg.v_max = 0.0;
        cfg.sense_every = 0;
        cfg.rounds = 30;
        cfg.noise = 0.3;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            cfg.seed = seed;
            auto g = gen_line(6);
            auto tr = run_eight_half_planes(g, cfg);
            CHECK(tr.containment_violations == 0);
            REQUIRE(tr.convergence_round.has_value());
            CHECK(*tr.convergence_round <= 5 * 5);
            for (std::size_t i = 0; i < 6; ++i) {
                CHECK(tr.memory_high_water[i] <= tr.memory_bound[i]);
                // directional optima only improve
                for (std::size_t t = 1; t < tr.support.size(); ++t)
                    for (std::size_t k = 0; k < 4; ++k)
                        CHECK(tr.support[t][i][k] <= tr.support[t - 1][i][k] + 1e-12);
            }
        }
    }

    TEST_CASE("distributed moving target is always contained")
    {
        LocalizationConfig cfg;
        cfg.box = {0, 10, 0, 10};
        cfg.v_max = 0.2;
        cfg.noise = 1.0;
        cfg.rounds = 40;
        for (std::size_t m : {1u, 3u}) {
            cfg.m = m;
            cfg.seed = 100 + m;
            Rng rng(m);
            auto g = gen_random_geometric(8, rng);
            auto tr = run_eight_half_planes(g, cfg);
            CHECK(tr.containment_violations == 0);
            for (std::size_t i = 0; i < 8; ++i) {
                CHECK(tr.memory_high_water[i] <= 8 + m + 8 * g.in_neighbors(i, 0).size());
                CHECK(tr.memory_bound[i] == 8 + m + 8 * g.in_neighbors(i, 0).size());
            }
            CHECK(tr.planes.size() == cfg.rounds + 1);
        }
    }

    TEST_CASE("more directions")
    {
        Box2 box{-1, 1, -1, 1};
        Rng rng(3);
        std::vector<HalfSpace> H;
        for (int k = 0; k < 5; ++k)
            H.push_back(sense({0, 0}, rng, 0.5));
        auto pr = pi_lp(H, box, 6);
        CHECK(pr.planes.size() == 12);
        CHECK(inside_all(pr.planes, {0, 0}));
        CHECK_THROWS_AS(pi_lp(H, box, 2), PreconditionError);
    }
}
