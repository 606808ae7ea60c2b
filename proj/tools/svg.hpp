#pragma once

#include <map>
#include <string>
#include <vector>

namespace crn {

/// Minimal SVG line chart of value-vs-CPI series sharing a [0, 1] y axis.
/// NaN points break the line.
std::string line_chart_svg(const std::string& title, const std::map<std::string, std::vector<double>>& series);

}  // namespace crn
