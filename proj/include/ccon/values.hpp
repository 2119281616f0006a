#pragma once

#include <string>
#include <vector>

#include "ccon/geometry.hpp"
#include "ccon/lp.hpp"

namespace ccon {

// Flat numeric view of a value, in the order the value is compared; used for
// traces and summaries.
std::vector<double> value_components(const LexValue& v);
std::vector<double> value_components(const BallValue& v);
std::vector<double> value_components(const StripeValue& v);
std::vector<double> value_components(const AnnulusValue& v);

std::vector<std::string> value_component_names(const LexValue& v);
std::vector<std::string> value_component_names(const BallValue& v);
std::vector<std::string> value_component_names(const StripeValue& v);
std::vector<std::string> value_component_names(const AnnulusValue& v);

} // namespace ccon
