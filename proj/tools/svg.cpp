#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace crn {

namespace {

constexpr double kW = 640, kH = 360, kLeft = 50, kRight = 150, kTop = 30, kBottom = 40;
const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

std::string line_chart_svg(const std::string& title, const std::map<std::string, std::vector<double>>& series) {
  std::size_t n = 1;
  for (const auto& [name, v] : series) n = std::max(n, v.size());
  const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
  auto x = [&](std::size_t p) { return kLeft + pw * (n > 1 ? static_cast<double>(p) / static_cast<double>(n - 1) : 0.0); };
  auto y = [&](double v) { return kTop + ph * (1.0 - std::clamp(v, 0.0, 1.0)); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << kLeft << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n"
    << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : {0.0, 0.25, 0.5, 0.75, 1.0})
    s << "<text x=\"" << kLeft - 6 << "\" y=\"" << y(t) + 4 << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">"
      << t << "</text>\n";
  s << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kH - 8
    << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">CPI (0.." << n - 1 << ")</text>\n";

  int k = 0;
  for (const auto& [name, v] : series) {
    const char* color = kColors[k % 8];
    std::string path;
    bool pen = false;
    for (std::size_t p = 0; p < v.size(); ++p) {
      if (std::isnan(v[p])) {
        pen = false;
        continue;
      }
      std::ostringstream pt;
      pt << (pen ? " L" : " M") << x(p) << "," << y(v[p]);
      path += pt.str();
      pen = true;
    }
    if (!path.empty()) s << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    const double ly = kTop + 14.0 * k + 10;
    s << "<line x1=\"" << kW - kRight + 10 << "\" y1=\"" << ly << "\" x2=\"" << kW - kRight + 30 << "\" y2=\"" << ly
      << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
      << "<text x=\"" << kW - kRight + 35 << "\" y=\"" << ly + 4 << "\" font-family=\"sans-serif\" font-size=\"11\">" << name
      << "</text>\n";
    ++k;
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace crn
