#include "ccon/values.hpp"

#include <limits>

namespace ccon {

namespace {

// Empty and infeasible values have no coordinates; NaN marks them in traces.
constexpr double kNone = std::numeric_limits<double>::quiet_NaN();

} // namespace

std::vector<double> value_components(const LexValue& v)
{
    std::vector<double> out;
    out.push_back(v.kind == LexKind::Unbounded ? -1.0 : (v.kind == LexKind::Finite ? 0.0 : 1.0));
    for (std::size_t k = 0; k < v.nkeys; ++k)
        out.push_back(v.kind == LexKind::Infeasible ? kNone : v.keys[k]);
    return out;
}

std::vector<double> value_components(const BallValue& v)
{
    if (v.kind == GeoKind::Empty)
        return {kNone, kNone, kNone};
    return {v.radius, v.center.x, v.center.y};
}

std::vector<double> value_components(const StripeValue& v)
{
    if (v.kind == GeoKind::Empty)
        return {kNone, kNone, kNone};
    return {v.width, v.angle, v.lo};
}

std::vector<double> value_components(const AnnulusValue& v)
{
    if (v.kind == GeoKind::Empty)
        return {kNone, kNone, kNone, kNone};
    return {v.area, v.center.x, v.center.y, v.v};
}

std::vector<std::string> value_component_names(const LexValue& v)
{
    std::vector<std::string> out{"kind"};
    for (std::size_t k = 0; k < v.nkeys; ++k)
        out.push_back("key" + std::to_string(k));
    return out;
}

std::vector<std::string> value_component_names(const BallValue&)
{
    return {"radius", "cx", "cy"};
}

std::vector<std::string> value_component_names(const StripeValue&)
{
    return {"width", "angle", "lo"};
}

std::vector<std::string> value_component_names(const AnnulusValue&)
{
    return {"area", "cx", "cy", "v"};
}

} // namespace ccon
