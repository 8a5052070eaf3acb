#pragma once

#include "admlab/risk_value.hpp"

#include <json.hpp>

#include <string>

namespace admlab {

/// Fixed "%.10g" rendering; +inf becomes "inf", -inf "-inf", NaN "nan".
std::string format_number(double v);
std::string format_risk(RiskValue r);

/// JSON numbers cannot hold infinity: non-finite values become strings.
nlohmann::ordered_json json_number(double v);
nlohmann::ordered_json json_risk(RiskValue r);

}  // namespace admlab
