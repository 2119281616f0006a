#pragma once

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "ccon/errors.hpp"

namespace ccon {

// A candidate solution: exactly delta constraints (padded with repeats) and
// the value of their distinct elements.
template <class C, class V>
struct Basis {
    std::vector<C> elements;
    V value;
};

template <class P>
using BasisOf = Basis<typename P::Constraint, typename P::Value>;

// Contract of an LP-type problem. evaluate() must accept any finite set of
// distinct constraints (including the empty set) and is the single source of
// truth for values; violates() and basis_computation() are the fast primitives
// and must agree with it.
template <class P>
concept AbstractProblem =
    std::totally_ordered<typename P::Constraint> &&
    requires(const P& p, std::span<const typename P::Constraint> set, const typename P::Value& v,
             const typename P::Constraint& h, const BasisOf<P>& b) {
        { p.delta() } -> std::convertible_to<std::size_t>;
        { p.evaluate(set) } -> std::same_as<typename P::Value>;
        { p.compare(v, v) } -> std::same_as<std::weak_ordering>;
        { p.is_finite(v) } -> std::same_as<bool>;
        { p.violates(b, h) } -> std::same_as<bool>;
        { p.basis_computation(b, h) } -> std::same_as<BasisOf<P>>;
    };

inline constexpr std::uint64_t kDefaultPrimitiveBudget = 10'000'000;

struct SubexStats {
    std::uint64_t violation_tests = 0;
    std::uint64_t basis_computations = 0;

    std::uint64_t primitive_calls() const { return violation_tests + basis_computations; }
};

template <class C>
std::vector<C> distinct(std::span<const C> s)
{
    std::vector<C> v(s.begin(), s.end());
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

template <class C>
std::vector<C> distinct(const std::vector<C>& s)
{
    return distinct(std::span<const C>(s));
}

template <AbstractProblem P>
bool values_equal(const P& p, const typename P::Value& a, const typename P::Value& b)
{
    return p.compare(a, b) == 0;
}

template <AbstractProblem P>
typename P::Value value_of(const P& p, std::span<const typename P::Constraint> set)
{
    auto d = distinct(set);
    return p.evaluate(std::span<const typename P::Constraint>(d));
}

// Pads a nonempty set of distinct constraints to delta entries.
template <AbstractProblem P>
BasisOf<P> make_basis(const P& p, std::vector<typename P::Constraint> support)
{
    if (support.empty())
        throw PreconditionError("make_basis: empty support");
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    if (support.size() > p.delta())
        throw PreconditionError("make_basis: support larger than the combinatorial dimension");
    BasisOf<P> b;
    b.value = p.evaluate(std::span<const typename P::Constraint>(support));
    b.elements = support;
    while (b.elements.size() < p.delta())
        b.elements.push_back(support.back());
    return b;
}

// All delta copies of a single constraint; the usual initial node state.
template <AbstractProblem P>
BasisOf<P> singleton_basis(const P& p, const typename P::Constraint& h)
{
    return make_basis(p, std::vector<typename P::Constraint>{h});
}

template <class C>
std::vector<C> support_of(const std::vector<C>& elements)
{
    return distinct(elements);
}

// Calls f(indices) for every k-subset of {0..m-1} in lexicographic order;
// stops early when f returns true. Returns whether it stopped early.
template <class F>
bool for_each_combination(std::size_t m, std::size_t k, F&& f)
{
    if (k > m)
        return false;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    while (true) {
        if (f(std::span<const std::size_t>(idx)))
            return true;
        if (k == 0)
            return false;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == m - k + i - 1)
            --i;
        if (i == 0)
            return false;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

// Smallest subset (by size, then lexicographic index order) of the sorted
// distinct candidates whose value equals target.
template <AbstractProblem P>
BasisOf<P> basis_by_enumeration(const P& p, const std::vector<typename P::Constraint>& candidates,
                                const typename P::Value& target)
{
    using C = typename P::Constraint;
    const std::size_t m = candidates.size();
    std::vector<C> subset;
    std::optional<BasisOf<P>> found;
    for (std::size_t k = 1; k <= std::min<std::size_t>(p.delta(), m) && !found; ++k) {
        for_each_combination(m, k, [&](std::span<const std::size_t> idx) {
            subset.clear();
            for (auto i : idx)
                subset.push_back(candidates[i]);
            auto v = p.evaluate(std::span<const C>(subset));
            if (p.compare(v, target) != 0)
                return false;
            BasisOf<P> b;
            b.elements = subset;
            b.value = v;
            while (b.elements.size() < p.delta())
                b.elements.push_back(subset.back());
            found = std::move(b);
            return true;
        });
    }
    if (!found)
        throw DimensionExceeded("no subset of at most delta constraints attains the value");
    return *found;
}

// Reference basis computation from evaluate() alone; problems may use it as
// their primitive or tests may compare a fast primitive against it.
template <AbstractProblem P>
BasisOf<P> enumerate_basis_computation(const P& p, const BasisOf<P>& b, const typename P::Constraint& h)
{
    using C = typename P::Constraint;
    auto cand = distinct(b.elements);
    if (!std::binary_search(cand.begin(), cand.end(), h)) {
        cand.push_back(h);
        std::sort(cand.begin(), cand.end());
    }
    auto target = p.evaluate(std::span<const C>(cand));
    return basis_by_enumeration(p, cand, target);
}

template <AbstractProblem P>
bool enumerate_violates(const P& p, const BasisOf<P>& b, const typename P::Constraint& h)
{
    using C = typename P::Constraint;
    auto cand = distinct(b.elements);
    if (std::binary_search(cand.begin(), cand.end(), h))
        return false;
    cand.push_back(h);
    return p.compare(p.evaluate(std::span<const C>(cand)), b.value) > 0;
}

namespace detail {

template <AbstractProblem P, class R>
class SubexRunner {
public:
    using C = typename P::Constraint;

    SubexRunner(const P& p, R& rng, SubexStats& stats, std::uint64_t budget)
        : p_(p), rng_(rng), stats_(stats), budget_(budget)
    {
    }

    // G holds distinct constraints and contains every element of start.
    BasisOf<P> run(const std::vector<C>& G, BasisOf<P> start)
    {
        auto base = distinct(start.elements);
        std::vector<C> rest;
        rest.reserve(G.size());
        for (const auto& g : G)
            if (!std::binary_search(base.begin(), base.end(), g))
                rest.push_back(g);
        if (rest.empty())
            return start;

        // Removing a uniformly random element of G \ C at every level of the
        // recursion is the same as reinserting a uniform random permutation.
        std::shuffle(rest.begin(), rest.end(), rng_);

        BasisOf<P> b = std::move(start);
        std::vector<C> current = base;
        current.reserve(G.size());
        for (const auto& h : rest) {
            current.push_back(h);
            tick(stats_.violation_tests);
            if (!p_.violates(b, h))
                continue;
            tick(stats_.basis_computations);
            auto next = p_.basis_computation(b, h);
            b = run(current, std::move(next));
        }
        return b;
    }

private:
    void tick(std::uint64_t& counter)
    {
        ++counter;
        if (stats_.primitive_calls() > budget_)
            throw RecursionBudgetExceeded("subex_lp exceeded its primitive-call budget");
    }

    const P& p_;
    R& rng_;
    SubexStats& stats_;
    std::uint64_t budget_;
};

} // namespace detail

// Randomized recursive solver. G is a multiset; duplicates are collapsed.
// The initial basis must be drawn from G and have a finite value.
template <AbstractProblem P, class R>
BasisOf<P> subex_lp(const P& p, std::span<const typename P::Constraint> G, const BasisOf<P>& initial, R& rng,
                    SubexStats* stats = nullptr, std::uint64_t budget = kDefaultPrimitiveBudget)
{
    auto g = distinct(G);
    for (const auto& c : initial.elements)
        if (!std::binary_search(g.begin(), g.end(), c))
            throw PreconditionError("subex_lp: initial basis is not contained in G");
    if (!p.is_finite(initial.value))
        throw InfeasibleBase("subex_lp: initial basis has no finite value");
    SubexStats local;
    detail::SubexRunner<P, R> runner(p, rng, stats ? *stats : local, budget);
    return runner.run(g, initial);
}

template <AbstractProblem P, class R>
BasisOf<P> subex_lp(const P& p, const std::vector<typename P::Constraint>& G, const BasisOf<P>& initial, R& rng,
                    SubexStats* stats = nullptr, std::uint64_t budget = kDefaultPrimitiveBudget)
{
    return subex_lp(p, std::span<const typename P::Constraint>(G), initial, rng, stats, budget);
}

inline constexpr std::size_t kBruteForceLimit = 25;

// Test oracle: value of G from evaluate(), then the smallest subset of at
// most delta elements with the same value, ties broken by sorted order.
template <AbstractProblem P>
BasisOf<P> brute_force_basis(const P& p, std::span<const typename P::Constraint> G)
{
    using C = typename P::Constraint;
    auto g = distinct(G);
    if (g.empty())
        throw PreconditionError("brute_force_basis: empty constraint set");
    if (g.size() > kBruteForceLimit)
        throw TooLarge("brute_force_basis: more than 25 distinct constraints");
    auto target = p.evaluate(std::span<const C>(g));
    return basis_by_enumeration(p, g, target);
}

template <AbstractProblem P>
BasisOf<P> brute_force_basis(const P& p, const std::vector<typename P::Constraint>& G)
{
    return brute_force_basis(p, std::span<const typename P::Constraint>(G));
}

struct AxiomReport {
    bool pass = true;
    std::size_t trials = 0;
    std::size_t locality_premises = 0;
    std::size_t monotonicity_failures = 0;
    std::size_t locality_failures = 0;
    std::size_t closure_failures = 0;
    std::string witness;
};

inline constexpr std::size_t kAxiomCheckLimit = 24;

// Samples nested pairs F ⊆ G of H together with a constraint h and a subset K,
// and checks monotonicity, locality, and the closure equivalence
// φ(F∪K) > φ(F) ⇔ ∃ g ∈ K: φ(F∪{g}) > φ(F).
template <AbstractProblem P, class R>
AxiomReport check_axioms(const P& p, std::span<const typename P::Constraint> H, std::size_t trials, R& rng)
{
    using C = typename P::Constraint;
    using V = typename P::Value;
    using Mask = std::uint32_t;

    auto h = distinct(H);
    const std::size_t m = h.size();
    if (m == 0)
        throw PreconditionError("check_axioms: empty constraint set");
    if (m > kAxiomCheckLimit)
        throw TooLarge("check_axioms: more than 24 distinct constraints");
    const Mask full = (m == 32) ? ~Mask{0} : ((Mask{1} << m) - 1);

    std::unordered_map<Mask, V> memo;
    std::vector<C> scratch;
    auto phi = [&](Mask s) -> const V& {
        auto it = memo.find(s);
        if (it != memo.end())
            return it->second;
        scratch.clear();
        for (std::size_t i = 0; i < m; ++i)
            if (s & (Mask{1} << i))
                scratch.push_back(h[i]);
        return memo.emplace(s, p.evaluate(std::span<const C>(scratch))).first->second;
    };
    auto cmp = [&](Mask a, Mask b) { return p.compare(phi(a), phi(b)); };
    auto random_subset = [&](Mask of) {
        Mask s = 0;
        for (std::size_t i = 0; i < m; ++i)
            if ((of & (Mask{1} << i)) && (rng() & 1U))
                s |= Mask{1} << i;
        return s;
    };
    // Smallest subset of s with the same value, by size then index order.
    auto basis_mask = [&](Mask s) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < m; ++i)
            if (s & (Mask{1} << i))
                members.push_back(i);
        Mask found = s;
        for (std::size_t k = 1; k <= std::min<std::size_t>(p.delta(), members.size()); ++k) {
            bool done = for_each_combination(members.size(), k, [&](std::span<const std::size_t> idx) {
                Mask t = 0;
                for (auto i : idx)
                    t |= Mask{1} << members[i];
                if (cmp(t, s) == 0) {
                    found = t;
                    return true;
                }
                return false;
            });
            if (done)
                break;
        }
        return found;
    };
    auto describe = [&](const char* what, Mask f, Mask g, std::size_t extra) {
        std::ostringstream os;
        os << what << ": F=0x" << std::hex << f << " G=0x" << g << std::dec << " h/index=" << extra;
        return os.str();
    };

    AxiomReport rep;
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    for (std::size_t t = 0; t < trials; ++t) {
        ++rep.trials;
        Mask g = random_subset(full);
        Mask f = random_subset(g);
        if (t % 2 == 1 && g != 0)
            f |= basis_mask(g);

        if (cmp(f, g) > 0) {
            ++rep.monotonicity_failures;
            if (rep.witness.empty())
                rep.witness = describe("monotonicity", f, g, 0);
        }

        std::size_t hi = pick(rng);
        Mask hb = Mask{1} << hi;
        if (p.is_finite(phi(f)) && cmp(f, g) == 0) {
            ++rep.locality_premises;
            if (cmp(g, g | hb) < 0 && !(cmp(f, f | hb) < 0)) {
                ++rep.locality_failures;
                if (rep.witness.empty())
                    rep.witness = describe("locality", f, g, hi);
            }
        }

        if (p.is_finite(phi(f))) {
            Mask k = random_subset(full);
            bool lhs = cmp(f | k, f) > 0;
            bool rhs = false;
            for (std::size_t i = 0; i < m && !rhs; ++i)
                if (k & (Mask{1} << i))
                    rhs = cmp(f | (Mask{1} << i), f) > 0;
            if (lhs != rhs) {
                ++rep.closure_failures;
                if (rep.witness.empty())
                    rep.witness = describe("closure", f, k, 0);
            }
        }
    }
    rep.pass = rep.monotonicity_failures == 0 && rep.locality_failures == 0 && rep.closure_failures == 0;
    return rep;
}

template <class C>
struct PersistencyWitness {
    C h;
    std::vector<C> G;
};

template <class C>
struct PersistencyResult {
    bool persistent = true;
    std::optional<PersistencyWitness<C>> witness;
};

inline constexpr std::size_t kPersistencyLimit = 12;

// A problem is persistent when every element of the basis of H stays in the
// basis of every subset that contains it. Bases come from brute_force_basis.
template <AbstractProblem P>
PersistencyResult<typename P::Constraint> persistency_check(const P& p, std::span<const typename P::Constraint> H)
{
    using C = typename P::Constraint;
    auto h = distinct(H);
    if (h.size() > kPersistencyLimit)
        throw TooLarge("persistency_check: more than 12 distinct constraints");
    PersistencyResult<C> res;
    if (h.empty())
        return res;
    auto bh = distinct(brute_force_basis(p, std::span<const C>(h)).elements);
    for (const auto& x : bh) {
        std::vector<C> others;
        for (const auto& y : h)
            if (!(y == x))
                others.push_back(y);
        const std::uint32_t count = std::uint32_t{1} << others.size();
        for (std::uint32_t mask = 0; mask < count; ++mask) {
            std::vector<C> g{x};
            for (std::size_t i = 0; i < others.size(); ++i)
                if (mask & (std::uint32_t{1} << i))
                    g.push_back(others[i]);
            auto bg = distinct(brute_force_basis(p, std::span<const C>(g)).elements);
            if (!std::binary_search(bg.begin(), bg.end(), x)) {
                res.persistent = false;
                res.witness = PersistencyWitness<C>{x, distinct(g)};
                return res;
            }
        }
    }
    return res;
}

template <AbstractProblem P>
PersistencyResult<typename P::Constraint> persistency_check(const P& p, const std::vector<typename P::Constraint>& H)
{
    return persistency_check(p, std::span<const typename P::Constraint>(H));
}

} // namespace ccon
