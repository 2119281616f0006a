#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccon/consensus.hpp"
#include "ccon/errors.hpp"
#include "ccon/formation.hpp"
#include "ccon/geometry.hpp"
#include "ccon/localization.hpp"
#include "ccon/lp.hpp"
#include "ccon/network.hpp"
#include "ccon/values.hpp"

namespace ccon {

using json = nlohmann::json;

json load_json(const std::filesystem::path& path);
void save_json(const json& j, const std::filesystem::path& path);
std::ofstream open_output(const std::filesystem::path& path);

// {n, schedule_kind, edge_sets: [[[i, j], ...], ...]}
json graph_to_json(const TimeVaryingDigraph& g);
TimeVaryingDigraph graph_from_json(const json& j);

json to_json(const HalfSpace& h);
HalfSpace half_space_from_json(const json& j);
json to_json(const Point2& p);
Point2 point_from_json(const json& j);
std::vector<Point2> points_from_json(const json& j);

json to_json(const LexValue& v);
json to_json(const BallValue& v);
json to_json(const StripeValue& v);
json to_json(const AnnulusValue& v);

template <class C, class V>
json basis_to_json(const Basis<C, V>& b)
{
    json el = json::array();
    for (const auto& c : b.elements)
        el.push_back(to_json(c));
    return json{{"elements", el}, {"value", to_json(b.value)}};
}

// round,node,<value components>,halted
template <class C, class V>
void write_consensus_csv(const ConsensusTrace<C, V>& tr, const std::filesystem::path& path)
{
    auto out = open_output(path);
    out << std::setprecision(17) << "round,node";
    for (const auto& name : value_component_names(tr.reference))
        out << ',' << name;
    out << ",halted\n";
    for (std::size_t t = 0; t < tr.values.size(); ++t)
        for (std::size_t i = 0; i < tr.n; ++i) {
            out << t << ',' << i;
            for (double x : value_components(tr.values[t][i]))
                out << ',' << x;
            bool halted = tr.halt_round[i] && *tr.halt_round[i] <= t;
            out << ',' << (halted ? 1 : 0) << '\n';
        }
    if (!out)
        throw IoError("write failed: " + path.string());
}

template <class C, class V>
json consensus_summary(const ConsensusTrace<C, V>& tr)
{
    json halts = json::array();
    for (const auto& h : tr.halt_round)
        halts.push_back(h ? json(*h) : json(nullptr));
    return json{{"n", tr.n},
                {"delta", tr.delta},
                {"rounds_run", tr.rounds_run},
                {"completion_round", tr.completion_round ? json(*tr.completion_round) : json("NOT_CONVERGED")},
                {"reference_value", to_json(tr.reference)},
                {"halt_rounds", halts},
                {"first_halt", tr.first_halt ? json(*tr.first_halt) : json(nullptr)},
                {"changes_after_first_halt", tr.changes_after_first_halt},
                {"messages_received", tr.messages_received},
                {"memory_high_water", tr.memory_high_water},
                {"memory_bound", tr.memory_bound},
                {"monotonicity_violations", tr.monotonicity_violations},
                {"primitive_calls", tr.primitive_calls}};
}

// round,node,8 x (a_x,a_y,b),target_x,target_y
void write_localization_csv(const LocalizationTrace& tr, const std::filesystem::path& path);
json localization_summary(const LocalizationTrace& tr);

// round,robot,x,y,halted,<value components>
void write_formation_csv(const FormationTrace& tr, const std::filesystem::path& path);
json formation_summary(const FormationTrace& tr);

} // namespace ccon
