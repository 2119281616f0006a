#include "ccon/io.hpp"

#include <cmath>

namespace ccon {

json load_json(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::ofstream open_output(const std::filesystem::path& path)
{
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path.string());
    return out;
}

void save_json(const json& j, const std::filesystem::path& path)
{
    auto out = open_output(path);
    out << j.dump(2) << '\n';
    if (!out)
        throw IoError("write failed: " + path.string());
}

json graph_to_json(const TimeVaryingDigraph& g)
{
    json sets = json::array();
    for (std::size_t t = 0; t < g.period(); ++t) {
        json e = json::array();
        for (auto [i, j] : g.edges(t))
            e.push_back({i, j});
        sets.push_back(e);
    }
    return json{{"n", g.n()}, {"schedule_kind", to_string(g.kind())}, {"edge_sets", sets}};
}

TimeVaryingDigraph graph_from_json(const json& j)
{
    try {
        auto n = j.at("n").get<std::size_t>();
        std::vector<std::vector<Edge>> sets;
        for (const auto& s : j.at("edge_sets")) {
            std::vector<Edge> e;
            for (const auto& x : s)
                e.emplace_back(x.at(0).get<std::size_t>(), x.at(1).get<std::size_t>());
            sets.push_back(std::move(e));
        }
        auto kind = j.value("schedule_kind", std::string("STATIC"));
        if (kind == "STATIC") {
            if (sets.size() != 1)
                throw ParseError("static graph needs exactly one edge set");
            return TimeVaryingDigraph::make_static(n, std::move(sets[0]));
        }
        if (kind == "PERIODIC")
            return TimeVaryingDigraph::make_periodic(n, std::move(sets));
        throw ParseError("unknown schedule_kind: " + kind);
    } catch (const json::exception& e) {
        throw ParseError(std::string("graph: ") + e.what());
    }
}

json to_json(const HalfSpace& h)
{
    return json{{"a", std::vector<double>(h.a.begin(), h.a.begin() + h.dim)}, {"b", h.b}};
}

HalfSpace half_space_from_json(const json& j)
{
    try {
        auto a = j.at("a").get<std::vector<double>>();
        return HalfSpace::make(a, j.at("b").get<double>());
    } catch (const json::exception& e) {
        throw ParseError(std::string("half-space: ") + e.what());
    }
}

json to_json(const Point2& p)
{
    return json::array({p.x, p.y});
}

Point2 point_from_json(const json& j)
{
    try {
        return {j.at(0).get<double>(), j.at(1).get<double>()};
    } catch (const json::exception& e) {
        throw ParseError(std::string("point: ") + e.what());
    }
}

std::vector<Point2> points_from_json(const json& j)
{
    if (!j.is_array())
        throw ParseError("points must be an array of [x, y] pairs");
    std::vector<Point2> out;
    for (const auto& p : j)
        out.push_back(point_from_json(p));
    return out;
}

namespace {

json number(double x)
{
    return std::isfinite(x) ? json(x) : json(nullptr);
}

} // namespace

json to_json(const LexValue& v)
{
    json j{{"kind", to_string(v.kind)}};
    if (v.kind != LexKind::Infeasible) {
        j["point"] = std::vector<double>(v.point.begin(), v.point.begin() + v.dim);
        j["cost"] = v.cost();
    }
    return j;
}

json to_json(const BallValue& v)
{
    if (v.kind == GeoKind::Empty)
        return json{{"kind", "EMPTY"}};
    return json{{"kind", "FINITE"}, {"radius", v.radius}, {"center", to_json(v.center)}};
}

json to_json(const StripeValue& v)
{
    if (v.kind == GeoKind::Empty)
        return json{{"kind", "EMPTY"}};
    return json{{"kind", "FINITE"}, {"width", v.width}, {"normal", to_json(v.normal)}, {"lo", v.lo}, {"hi", v.hi}};
}

json to_json(const AnnulusValue& v)
{
    if (v.kind == GeoKind::Empty)
        return json{{"kind", "EMPTY"}};
    json j{{"kind", "FINITE"}, {"area_over_pi", v.area}, {"center", to_json(v.center)}};
    try {
        auto a = to_annulus(v);
        j["r"] = a.r;
        j["R"] = a.R;
    } catch (const NegativeRadicand&) {
        j["r"] = nullptr;
    }
    return j;
}

void write_localization_csv(const LocalizationTrace& tr, const std::filesystem::path& path)
{
    auto out = open_output(path);
    std::size_t width = tr.planes.empty() || tr.planes[0].empty() ? 8 : tr.planes[0][0].size();
    out << std::setprecision(17) << "round,node";
    for (std::size_t k = 0; k < width; ++k)
        out << ",a" << k << "_x,a" << k << "_y,b" << k;
    out << ",target_x,target_y\n";
    for (std::size_t t = 0; t < tr.planes.size(); ++t)
        for (std::size_t i = 0; i < tr.n; ++i) {
            out << t << ',' << i;
            for (const auto& h : tr.planes[t][i])
                out << ',' << h.a[0] << ',' << h.a[1] << ',' << h.b;
            out << ',' << tr.target[t].x << ',' << tr.target[t].y << '\n';
        }
    if (!out)
        throw IoError("write failed: " + path.string());
}

json localization_summary(const LocalizationTrace& tr)
{
    return json{{"n", tr.n},
                {"rounds", tr.planes.empty() ? 0 : tr.planes.size() - 1},
                {"containment_violations", tr.containment_violations},
                {"convergence_round", tr.convergence_round ? json(*tr.convergence_round) : json(nullptr)},
                {"memory_high_water", tr.memory_high_water},
                {"memory_bound", tr.memory_bound}};
}

void write_formation_csv(const FormationTrace& tr, const std::filesystem::path& path)
{
    auto out = open_output(path);
    out << std::setprecision(17) << "round,robot,x,y,halted";
    std::size_t k = tr.reference.size();
    for (std::size_t c = 0; c < k; ++c)
        out << ",v" << c;
    out << '\n';
    for (std::size_t t = 0; t < tr.positions.size(); ++t)
        for (std::size_t i = 0; i < tr.n; ++i) {
            out << t << ',' << i << ',' << tr.positions[t][i].x << ',' << tr.positions[t][i].y << ','
                << (tr.halted[t][i] ? 1 : 0);
            for (double x : tr.values[t][i])
                out << ',' << x;
            out << '\n';
        }
    if (!out)
        throw IoError("write failed: " + path.string());
}

json formation_summary(const FormationTrace& tr)
{
    json halts = json::array();
    for (const auto& h : tr.halt_round)
        halts.push_back(h ? json(*h) : json(nullptr));
    json finals = json::array();
    if (!tr.positions.empty())
        for (auto p : tr.positions.back())
            finals.push_back(to_json(p));
    json shape{{"kind", to_string(tr.shape)}, {"point", to_json(tr.reference_shape.point)}};
    if (tr.shape == ShapeKind::Line)
        shape["direction"] = to_json(tr.reference_shape.dir);
    if (tr.shape == ShapeKind::Circle)
        shape["radius"] = tr.reference_shape.radius;
    json ref = json::array();
    for (double x : tr.reference)
        ref.push_back(number(x));
    return json{{"n", tr.n},
                {"rounds_run", tr.rounds_run},
                {"reference_value", ref},
                {"consensus_shape", shape},
                {"consensus_round", tr.consensus_round ? json(*tr.consensus_round) : json(nullptr)},
                {"first_halt", tr.first_halt ? json(*tr.first_halt) : json(nullptr)},
                {"halt_rounds", halts},
                {"final_positions", finals},
                {"max_final_distance", tr.max_final_distance},
                {"max_step", tr.max_step},
                {"displacement_violations", tr.displacement_violations},
                {"edge_violations", tr.edge_violations},
                {"post_halt_disconnections", tr.post_halt_disconnections}};
}

} // namespace ccon
