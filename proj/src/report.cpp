#include "crn/report.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace crn {

std::string format_number(double v) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

void write_series_csv(std::ostream& out, const std::string& series, const std::vector<double>& values) {
  out << "cpi,series,value\n";
  for (std::size_t p = 0; p < values.size(); ++p) {
    if (std::isnan(values[p])) continue;
    out << p << "," << series << "," << format_number(values[p]) << "\n";
  }
}

std::vector<std::string> write_metrics(const std::string& dir, const MetricsReport& rep) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> written;
  auto emit = [&](const std::string& series, const std::vector<double>& values) {
    const std::string name = series + ".csv";
    std::ofstream f(fs::path(dir) / name);
    if (!f) throw std::runtime_error("cannot write " + (fs::path(dir) / name).string());
    write_series_csv(f, series, values);
    written.push_back(name);
  };
  for (const auto& [bin, curve] : rep.pd_curve) emit("pd_bin" + std::to_string(bin), curve);
  for (const auto& [bin, curve] : rep.pacq_curve) emit("pacq_bin" + std::to_string(bin), curve);
  std::ofstream f(fs::path(dir) / "summary.csv");
  if (!f) throw std::runtime_error("cannot write summary.csv");
  f << "cpi,series,value\n"
    << "all,pfa_measured," << format_number(rep.pfa_measured) << "\n"
    << "all,false_alarms," << rep.false_alarms << "\n"
    << "all,opportunities," << rep.opportunities << "\n";
  for (const auto& [bin, curve] : rep.pd_curve) {
    double sum = 0.0;
    int n = 0;
    for (double v : curve)
      if (!std::isnan(v)) sum += v, ++n;
    f << "all,mean_pd_bin" << bin << "," << format_number(n ? sum / n : 0.0) << "\n";
  }
  written.push_back("summary.csv");
  return written;
}

void write_manifest(std::ostream& out, const Manifest& m) {
  for (const auto& [k, v] : m) out << k << "=" << v << "\n";
}

Manifest read_manifest(std::istream& in) {
  Manifest m;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("manifest line without '=': " + line);
    m.emplace_back(line.substr(0, eq), line.substr(eq + 1));
  }
  return m;
}

std::string manifest_get(const Manifest& m, const std::string& key) {
  for (const auto& [k, v] : m)
    if (k == key) return v;
  throw std::runtime_error("manifest has no key '" + key + "'");
}

void append_scenario(Manifest& m, const Scenario& s) {
  std::istringstream in(to_text(s));
  std::string line, section;
  std::map<std::string, int> seen;
  int index = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '[') {
      section = line.substr(1, line.size() - 2);
      index = seen[section]++;
      continue;
    }
    const auto eq = line.find(" = ");
    const std::string key = line.substr(0, eq);
    m.emplace_back("config." + section + "." + std::to_string(index) + "." + key, line.substr(eq + 3));
  }
}

Scenario scenario_from_manifest(const Manifest& m) {
  std::ostringstream text;
  std::string open;
  for (const auto& [k, v] : m) {
    if (k.rfind("config.", 0) != 0) continue;
    const auto a = k.find('.', 7);
    const auto b = k.find('.', a + 1);
    if (a == std::string::npos || b == std::string::npos) throw std::runtime_error("bad manifest key " + k);
    const std::string section_id = k.substr(7, b - 7);
    if (section_id != open) {
      text << "[" << k.substr(7, a - 7) << "]\n";
      open = section_id;
    }
    text << k.substr(b + 1) << " = " << v << "\n";
  }
  return load_scenario(text.str());
}

}  // namespace crn
