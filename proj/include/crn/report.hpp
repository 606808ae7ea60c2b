#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "crn/montecarlo.hpp"

namespace crn {

/// Shortest decimal text that reads back to the same double.
std::string format_number(double v);

/// Header `cpi,series,value`, one row per CPI where the series is defined.
void write_series_csv(std::ostream& out, const std::string& series, const std::vector<double>& values);

/// Writes pd_bin<b>.csv, pacq_bin<b>.csv and summary.csv into dir.
/// Returns the file names written, in order.
std::vector<std::string> write_metrics(const std::string& dir, const MetricsReport& rep);

/// Ordered flat key=value text.
using Manifest = std::vector<std::pair<std::string, std::string>>;

void write_manifest(std::ostream& out, const Manifest& m);
Manifest read_manifest(std::istream& in);
std::string manifest_get(const Manifest& m, const std::string& key);

/// Scenario text flattened to config.<section>.<index>.<key> entries and back.
void append_scenario(Manifest& m, const Scenario& s);
Scenario scenario_from_manifest(const Manifest& m);

}  // namespace crn
