#include <doctest.h>

#include <random>

#include "ccon/abstract.hpp"
#include "ccon/lp.hpp"

using namespace ccon;

TEST_SUITE("abstract")
{
    TEST_CASE("subex_lp returns the initial basis when G equals it")
    {
        LpProblem p(2, {1.0, 0.0});
        std::vector<HalfSpace> g{HalfSpace::make({-1.0, 0.0}, 0.0), HalfSpace::make({0.0, -1.0}, 0.0)};
        auto c = make_basis(p, g);
        Rng rng(1);
        SubexStats st;
        auto b = subex_lp(p, g, c, rng, &st);
        CHECK(b.elements == c.elements);
        CHECK(st.primitive_calls() == 0);
    }

    TEST_CASE("subex_lp on a triangle")
    {
        // x >= 0, y >= 0, x + y <= 2; lex-min of x is the vertex (0,0)
        LpProblem p(2, {1.0, 0.0});
        std::vector<HalfSpace> g{HalfSpace::make({-1.0, 0.0}, 0.0), HalfSpace::make({0.0, -1.0}, 0.0),
                                 HalfSpace::make({1.0, 1.0}, 2.0)};
        Rng rng(3);
        auto b = subex_lp(p, g, singleton_basis(p, g[2]), rng);
        auto want = distinct(std::vector<HalfSpace>{g[0], g[1]});
        CHECK(distinct(b.elements) == want);
        CHECK(p.compare(b.value, brute_force_basis(p, g).value) == 0);
        CHECK(b.value.point[0] == doctest::Approx(0.0));
        CHECK(b.value.point[1] == doctest::Approx(0.0));
    }

    TEST_CASE("subex_lp matches brute force on random programs")
    {
        Rng gen(12);
        for (int t = 0; t < 60; ++t) {
            std::size_t d = 2 + static_cast<std::size_t>(t % 3);
            auto lp = (t % 2) ? gen_model_a(12, d, gen) : gen_model_b(12, d, gen);
            LpProblem p(lp);
            Rng rng(static_cast<std::uint64_t>(t));
            auto b = subex_lp(p, lp.constraints, singleton_basis(p, lp.constraints[t % 12]), rng);
            CHECK(b.elements.size() == d);
            CHECK(p.compare(b.value, brute_force_basis(p, lp.constraints).value) == 0);
        }
    }

    TEST_CASE("subex_lp is deterministic given the seed")
    {
        Rng gen(5);
        auto lp = gen_model_a(40, 3, gen);
        LpProblem p(lp);
        Rng a(77), b(77);
        SubexStats sa, sb;
        auto x = subex_lp(p, lp.constraints, singleton_basis(p, lp.constraints[0]), a, &sa);
        auto y = subex_lp(p, lp.constraints, singleton_basis(p, lp.constraints[0]), b, &sb);
        CHECK(x.elements == y.elements);
        CHECK(sa.violation_tests == sb.violation_tests);
        CHECK(sa.basis_computations == sb.basis_computations);
    }

    TEST_CASE("subex_lp preconditions and budget")
    {
        Rng gen(5);
        auto lp = gen_model_a(40, 3, gen);
        LpProblem p(lp);
        Rng rng(1);
        std::vector<HalfSpace> part(lp.constraints.begin(), lp.constraints.begin() + 10);
        CHECK_THROWS_AS(subex_lp(p, part, singleton_basis(p, lp.constraints[20]), rng), PreconditionError);
        CHECK_THROWS_AS(subex_lp(p, lp.constraints, singleton_basis(p, lp.constraints[0]), rng, nullptr, 5),
                        RecursionBudgetExceeded);
        std::vector<HalfSpace> bad{HalfSpace::make({1.0, 0.0, 0.0}, 0.0), HalfSpace::make({-1.0, 0.0, 0.0}, -1.0)};
        auto inf = make_basis(p, bad);
        CHECK_THROWS_AS(subex_lp(p, bad, inf, rng), InfeasibleBase);
    }

    TEST_CASE("brute_force_basis of a single constraint")
    {
        LpProblem p(3, {1.0, 2.0, 3.0});
        auto h = HalfSpace::make({1.0, 1.0, 1.0}, 1.0);
        auto b = brute_force_basis(p, std::vector<HalfSpace>{h});
        REQUIRE(b.elements.size() == 3);
        for (const auto& e : b.elements)
            CHECK(e == h);
    }

    TEST_CASE("brute_force_basis guard")
    {
        Rng gen(1);
        auto lp = gen_model_a(26, 2, gen);
        LpProblem p(lp);
        CHECK_THROWS_AS(brute_force_basis(p, lp.constraints), TooLarge);
    }

    TEST_CASE("axioms hold for the lexicographic LP")
    {
        for (std::uint64_t s = 0; s < 4; ++s) {
            Rng gen(100 + s);
            auto lp = (s % 2) ? gen_model_b(8, 2, gen) : gen_model_a(8, 2, gen);
            LpProblem p(lp);
            Rng rng(s);
            auto rep = check_axioms(p, std::span<const HalfSpace>(lp.constraints), 500, rng);
            CHECK_MESSAGE(rep.pass, rep.witness);
            CHECK(rep.locality_premises > 50);
        }
    }

    TEST_CASE("cost-only ordering breaks locality")
    {
        // min x1 with x1 >= 0, x2 >= 1, x2 - x1 <= 0.5: the optimal faces are
        // vertical segments, so the scalar cost cannot tell them apart
        std::vector<HalfSpace> h{HalfSpace::make({-1.0, 0.0}, 0.0), HalfSpace::make({0.0, -1.0}, -1.0),
                                 HalfSpace::make({-1.0, 1.0}, 0.5)};
        LpProblem broken(LexOrder::standard(2, {1.0, 0.0}), BoxSpec{}, ValueOrder::CostOnly);
        Rng rng(9);
        auto rep = check_axioms(broken, std::span<const HalfSpace>(h), 500, rng);
        CHECK_FALSE(rep.pass);
        CHECK(rep.locality_failures > 0);
        CHECK_FALSE(rep.witness.empty());

        LpProblem fine(2, {1.0, 0.0});
        Rng rng2(9);
        CHECK(check_axioms(fine, std::span<const HalfSpace>(h), 500, rng2).pass);
    }

    TEST_CASE("persistency")
    {
        LpProblem p(2, {1.0, 0.3});
        auto h = HalfSpace::make({-1.0, 0.0}, 0.0);
        CHECK(persistency_check(p, std::vector<HalfSpace>{h}).persistent);

        Rng rng(2011);
        auto lp = find_nonpersistent_lp(rng);
        REQUIRE(lp.has_value());
        LpProblem q(*lp);
        const auto& c = lp->constraints;
        CHECK(distinct(brute_force_basis(q, c).elements) == distinct(std::vector<HalfSpace>{c[0], c[1]}));
        CHECK(distinct(brute_force_basis(q, std::vector<HalfSpace>{c[1], c[2], c[3]}).elements) ==
              distinct(std::vector<HalfSpace>{c[2], c[3]}));
        auto res = persistency_check(q, c);
        CHECK_FALSE(res.persistent);
        REQUIRE(res.witness.has_value());
        auto bg = distinct(brute_force_basis(q, res.witness->G).elements);
        CHECK_FALSE(std::binary_search(bg.begin(), bg.end(), res.witness->h));
    }

    TEST_CASE("for_each_combination enumerates in order")
    {
        std::vector<std::vector<std::size_t>> seen;
        for_each_combination(4, 2, [&](std::span<const std::size_t> idx) {
            seen.emplace_back(idx.begin(), idx.end());
            return false;
        });
        REQUIRE(seen.size() == 6);
        CHECK(seen.front() == std::vector<std::size_t>{0, 1});
        CHECK(seen.back() == std::vector<std::size_t>{2, 3});
    }
}
