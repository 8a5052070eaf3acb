#include "admlab/report.hpp"

#include <cmath>
#include <cstdio>

namespace admlab {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string format_risk(RiskValue r) { return format_number(r.value()); }

nlohmann::ordered_json json_number(double v) {
    if (std::isfinite(v)) return v;
    return format_number(v);
}

nlohmann::ordered_json json_risk(RiskValue r) { return json_number(r.value()); }

}  // namespace admlab
