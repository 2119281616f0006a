#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ccon/abstract.hpp"
#include "ccon/errors.hpp"
#include "ccon/network.hpp"
#include "ccon/rng.hpp"

namespace ccon {

enum class Variant : std::uint8_t { Nominal, MultiRound, Cycling };

inline const char* to_string(Variant v)
{
    switch (v) {
    case Variant::MultiRound:
        return "MULTI_ROUND";
    case Variant::Cycling:
        return "CYCLING";
    default:
        return "NOMINAL";
    }
}

struct HaltingPolicy {
    enum class Kind : std::uint8_t { None, DiameterRule, Fixed };

    Kind kind = Kind::None;
    std::size_t param = 0; // diameter for DiameterRule, round count for Fixed

    static HaltingPolicy none() { return {}; }
    static HaltingPolicy diameter_rule(std::size_t diam) { return {Kind::DiameterRule, diam}; }
    static HaltingPolicy fixed(std::size_t k) { return {Kind::Fixed, k}; }

    // Consecutive unchanged rounds after which a node halts; 0 means never.
    std::size_t threshold() const
    {
        switch (kind) {
        case Kind::DiameterRule:
            return 2 * param + 1;
        case Kind::Fixed:
            return param;
        default:
            return 0;
        }
    }
};

struct RunOptions {
    Variant variant = Variant::Nominal;
    std::size_t max_rounds = 1000;
    HaltingPolicy halting;
    std::size_t latency = 1;      // rounds per solver invocation, MultiRound only
    std::size_t memory_bound = 1; // messages processed per round, Cycling only
    std::uint64_t seed = 0;
    // Include the node's own constraint in every local problem. Turning this
    // off is only meant for demonstrating why it is needed.
    bool reexamine = true;
    // Stop as soon as every node holds the reference value and no halting
    // rule is active; later rounds cannot change anything.
    bool stop_when_complete = false;
    bool record_values = true;
};

template <class C, class V>
struct ConsensusTrace {
    std::size_t n = 0;
    std::size_t delta = 0;
    std::size_t rounds_run = 0;
    V reference{};
    // values[t][i]: value of node i after t communication rounds (t = 0 is the
    // initial state).
    std::vector<std::vector<V>> values;
    std::optional<std::size_t> completion_round;
    std::vector<std::optional<std::size_t>> halt_round;
    std::vector<Basis<C, V>> final_bases;
    std::vector<std::size_t> messages_received;
    std::vector<std::size_t> memory_high_water;
    std::vector<std::size_t> memory_bound;
    std::size_t monotonicity_violations = 0;
    std::optional<std::size_t> first_halt;
    std::size_t changes_after_first_halt = 0;
    std::uint64_t primitive_calls = 0;

    bool memory_within_bounds() const
    {
        for (std::size_t i = 0; i < n; ++i)
            if (memory_high_water[i] > memory_bound[i])
                return false;
        return true;
    }
};

// 1 + delta (1 + k): own constraint, own basis and k received bases.
inline std::size_t memory_units(std::size_t delta, std::size_t k)
{
    return 1 + delta * (1 + k);
}

// One local update: the new basis of {h} ∪ B ∪ (received bases).
template <AbstractProblem P, class R>
BasisOf<P> consensus_step(const P& p, const typename P::Constraint* own, const BasisOf<P>& current,
                          std::span<const BasisOf<P>* const> received, R& rng, SubexStats* stats = nullptr)
{
    std::vector<typename P::Constraint> tmp(current.elements.begin(), current.elements.end());
    if (own)
        tmp.push_back(*own);
    for (const auto* b : received)
        tmp.insert(tmp.end(), b->elements.begin(), b->elements.end());
    return subex_lp(p, std::span<const typename P::Constraint>(tmp), current, rng, stats);
}

// Synchronous simulation of constraints consensus. Node i owns assignment[i].
// Each round every node sends its basis (or nothing once halted) along the
// edges of the current round, then all nodes update from the previous
// round's messages simultaneously.
template <AbstractProblem P>
ConsensusTrace<typename P::Constraint, typename P::Value>
run_constraints_consensus(const P& p, const TimeVaryingDigraph& g, const std::vector<typename P::Constraint>& assignment,
                          const RunOptions& opts, const std::optional<typename P::Value>& reference = std::nullopt)
{
    using C = typename P::Constraint;
    using B = BasisOf<P>;

    const std::size_t n = g.n();
    if (assignment.size() != n)
        throw NotBijective("assignment must give exactly one constraint per node");
    if (distinct(assignment).size() != n)
        throw NotBijective("assignment repeats a constraint");
    if (!is_jointly_strongly_connected(g, g.period()))
        throw NotJointlyConnected("communication graph is not jointly strongly connected");
    if (opts.variant == Variant::Cycling && g.kind() != ScheduleKind::Static)
        throw TimeVaryingNotSupported("the cycling variant needs a static graph");
    if (opts.variant == Variant::Cycling && opts.memory_bound < 1)
        throw PreconditionError("memory bound D must be at least 1");
    if (opts.variant == Variant::MultiRound && opts.latency < 1)
        throw PreconditionError("latency L must be at least 1");

    const std::size_t delta = p.delta();
    const std::size_t latency = opts.variant == Variant::MultiRound ? opts.latency : 1;
    const std::size_t threshold = opts.halting.threshold();

    ConsensusTrace<C, typename P::Value> tr;
    tr.n = n;
    tr.delta = delta;
    tr.halt_round.assign(n, std::nullopt);
    tr.messages_received.assign(n, 0);
    tr.memory_high_water.assign(n, 1 + delta);
    tr.memory_bound.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t indeg = 0;
        for (std::size_t t = 0; t < g.period(); ++t)
            indeg = std::max(indeg, g.in_neighbors(i, t).size());
        std::size_t k = opts.variant == Variant::Cycling ? std::min(indeg, opts.memory_bound) : indeg;
        tr.memory_bound[i] = memory_units(delta, k);
    }

    if (reference) {
        tr.reference = *reference;
    } else {
        Rng r(derive_seed(opts.seed, {0xfeedULL}));
        tr.reference = subex_lp(p, assignment, singleton_basis(p, assignment[0]), r).value;
    }

    std::vector<Rng> rngs;
    rngs.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        rngs.emplace_back(derive_seed(opts.seed, {static_cast<std::uint64_t>(i)}));

    std::vector<B> bases;
    bases.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        bases.push_back(singleton_basis(p, assignment[i]));

    // Pending solver invocations of the multi-round variant.
    struct Job {
        bool active = false;
        std::size_t finish = 0;
        std::vector<C> input;
    };
    std::vector<Job> jobs(n);
    std::vector<std::size_t> unchanged(n, 0);
    std::vector<bool> halted(n, false);
    SubexStats stats;

    auto all_at_reference = [&] {
        for (const auto& b : bases)
            if (p.compare(b.value, tr.reference) != 0)
                return false;
        return true;
    };
    auto snapshot = [&] {
        std::vector<typename P::Value> v;
        v.reserve(n);
        for (const auto& b : bases)
            v.push_back(b.value);
        return v;
    };

    if (opts.record_values)
        tr.values.push_back(snapshot());
    if (all_at_reference())
        tr.completion_round = 0;

    std::vector<B> next;
    std::vector<const B*> inbox;
    for (std::size_t r = 0; r < opts.max_rounds; ++r) {
        if (tr.completion_round && opts.stop_when_complete && threshold == 0)
            break;
        if (std::all_of(halted.begin(), halted.end(), [](bool h) { return h; }))
            break;
        next = bases;
        for (std::size_t i = 0; i < n; ++i) {
            if (halted[i])
                continue;
            const auto& nin = g.in_neighbors(i, r);
            inbox.clear();
            if (opts.variant == Variant::Cycling && !nin.empty()) {
                const std::size_t D = opts.memory_bound;
                const std::size_t groups = (nin.size() + D - 1) / D;
                const std::size_t gi = r % groups;
                for (std::size_t k = gi * D; k < std::min(nin.size(), (gi + 1) * D); ++k)
                    if (!halted[nin[k]])
                        inbox.push_back(&bases[nin[k]]);
            } else {
                for (auto j : nin)
                    if (!halted[j])
                        inbox.push_back(&bases[j]);
            }

            const C* own = opts.reexamine ? &assignment[i] : nullptr;
            if (latency == 1) {
                tr.messages_received[i] += inbox.size();
                tr.memory_high_water[i] = std::max(tr.memory_high_water[i], memory_units(delta, inbox.size()));
                next[i] = consensus_step(p, own, bases[i], std::span<const B* const>(inbox), rngs[i], &stats);
                continue;
            }

            auto& job = jobs[i];
            if (!job.active) {
                // Inputs are frozen for the whole invocation.
                tr.messages_received[i] += inbox.size();
                tr.memory_high_water[i] = std::max(tr.memory_high_water[i], memory_units(delta, inbox.size()));
                job.input.assign(bases[i].elements.begin(), bases[i].elements.end());
                if (own)
                    job.input.push_back(*own);
                for (const auto* b : inbox)
                    job.input.insert(job.input.end(), b->elements.begin(), b->elements.end());
                job.active = true;
                job.finish = r + latency - 1;
            }
            if (job.finish == r) {
                next[i] = subex_lp(p, std::span<const C>(job.input), bases[i], rngs[i], &stats);
                job.active = false;
            }
        }

        for (std::size_t i = 0; i < n; ++i) {
            if (halted[i])
                continue;
            auto c = p.compare(next[i].value, bases[i].value);
            if (c < 0)
                ++tr.monotonicity_violations;
            if (c != 0 && tr.first_halt)
                ++tr.changes_after_first_halt;
            unchanged[i] = c == 0 ? unchanged[i] + 1 : 0;
        }
        bases.swap(next);
        tr.rounds_run = r + 1;
        for (std::size_t i = 0; i < n; ++i) {
            if (!halted[i] && threshold > 0 && unchanged[i] >= threshold) {
                halted[i] = true;
                tr.halt_round[i] = r + 1;
                if (!tr.first_halt)
                    tr.first_halt = r + 1;
            }
        }
        if (opts.record_values)
            tr.values.push_back(snapshot());
        if (!tr.completion_round && all_at_reference())
            tr.completion_round = r + 1;
    }

    tr.final_bases = std::move(bases);
    tr.primitive_calls = stats.primitive_calls();
    return tr;
}

} // namespace ccon
