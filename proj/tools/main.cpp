#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "crn/clutter.hpp"
#include "crn/fusion.hpp"
#include "crn/montecarlo.hpp"
#include "crn/report.hpp"
#include "svg.hpp"

namespace fs = std::filesystem;
using namespace crn;

namespace {

constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

// Argument problems caught after CLI11 parsing; mapped to exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunArgs {
  std::string scenario_file;
  std::string manifest_file;
  std::string policy = "sarsa";
  int trials = 50;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  int workers = 1;
  bool svg = false;
  bool exclude_adjacent = false;
};

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : " ") + s;
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f || !(f << text)) throw std::runtime_error("cannot write " + path.string());
}

std::vector<std::string> write_svgs(const fs::path& dir, const MetricsReport& rep) {
  std::map<std::string, std::vector<double>> pd, pacq;
  for (const auto& [b, c] : rep.pd_curve) pd["bin " + std::to_string(b)] = c;
  for (const auto& [b, c] : rep.pacq_curve) pacq["bin " + std::to_string(b)] = c;
  const std::string tag = to_string(rep.policy);
  write_text(dir / "pd.svg", line_chart_svg("P_D per target (" + tag + ")", pd));
  write_text(dir / "pacq.svg", line_chart_svg("P_acq per target (" + tag + ")", pacq));
  return {"pd.svg", "pacq.svg"};
}

int cmd_run(RunArgs a) {
  Scenario sc;
  Manifest source;
  if (!a.manifest_file.empty()) {
    std::ifstream f(a.manifest_file);
    if (!f) throw ConfigError("cannot read manifest '" + a.manifest_file + "'");
    try {
      source = read_manifest(f);
      sc = scenario_from_manifest(source);
      a.scenario_file = manifest_get(source, "scenario_file");
      a.policy = manifest_get(source, "policy");
      a.trials = std::stoi(manifest_get(source, "trials"));
      a.seed = std::stoull(manifest_get(source, "seed"));
      a.exclude_adjacent = manifest_get(source, "exclude_adjacent") == "1";
      a.svg = manifest_get(source, "svg") == "1";
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError("bad manifest: " + std::string(e.what()));
    }
  } else {
    if (a.scenario_file.empty()) throw UsageError("run needs a scenario file or --manifest");
    if (!fs::is_regular_file(a.scenario_file)) throw ConfigError("no such scenario file '" + a.scenario_file + "'");
    sc = load_scenario_file(a.scenario_file);
  }
  if (a.trials < 1) throw UsageError("--trials must be >= 1");
  if (a.workers < 1) throw UsageError("--workers must be >= 1");

  std::vector<Policy> policies;
  if (a.policy == "all")
    policies = {Policy::optimal, Policy::orthogonal, Policy::adaptive, Policy::scanning, Policy::sarsa};
  else
    policies = {parse_policy(a.policy)};

  const auto t0 = std::chrono::steady_clock::now();
  const fs::path out(a.out_dir);
  fs::create_directories(out);
  CampaignOptions opts;
  opts.workers = a.workers;
  opts.exclude_adjacent = a.exclude_adjacent;

  std::vector<std::string> outputs;
  for (Policy pol : policies) {
    const fs::path dir = policies.size() > 1 ? out / to_string(pol) : out;
    const std::string prefix = policies.size() > 1 ? to_string(pol) + "/" : "";
    const MetricsReport rep = run_campaign(sc, pol, a.trials, a.seed, opts);
    for (const auto& name : write_metrics(dir.string(), rep)) outputs.push_back(prefix + name);
    if (a.svg)
      for (const auto& name : write_svgs(dir, rep)) outputs.push_back(prefix + name);
    std::cout << to_string(pol) << ": pfa_measured=" << format_number(rep.pfa_measured);
    for (const auto& [b, c] : rep.pd_curve) {
      double sum = 0.0;
      int n = 0;
      for (double v : c)
        if (!std::isnan(v)) sum += v, ++n;
      std::cout << " mean_pd_bin" << b << "=" << fmt6(n ? sum / n : 0.0);
    }
    std::cout << (rep.floor.floored ? " floored=" + std::to_string(rep.floor.floored) : "") << "\n";
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  Manifest m{{"tool", "crn"},
             {"version", CRN_VERSION},
             {"command", "run"},
             {"scenario_file", a.scenario_file},
             {"policy", a.policy},
             {"trials", std::to_string(a.trials)},
             {"seed", std::to_string(a.seed)},
             {"workers", std::to_string(a.workers)},
             {"exclude_adjacent", a.exclude_adjacent ? "1" : "0"},
             {"svg", a.svg ? "1" : "0"},
             {"outputs", join(outputs)},
             {"wall_seconds", fmt6(wall)}};
  if (!a.manifest_file.empty()) m.emplace_back("rerun_of", a.manifest_file);
  append_scenario(m, sc);
  std::ostringstream ms;
  write_manifest(ms, m);
  write_text(out / "manifest.txt", ms.str());
  std::cout << "wrote " << outputs.size() << " files and manifest.txt to " << out.string() << "\n";
  return 0;
}

int cmd_threshold(double pfa, int radars, const std::string& mode) {
  if (!(pfa > 0.0 && pfa < 1.0)) throw UsageError("--pfa must lie in (0, 1)");
  if (radars < 1) throw UsageError("--radars must be >= 1");
  double lambda = 0.0;
  if (radars == 1 || mode == "single")
    lambda = cfar_threshold(pfa);
  else if (mode == "decentralized")
    lambda = decentralized_threshold(pfa, radars);
  else if (mode == "centralized")
    lambda = centralized_threshold(pfa, radars);
  else
    throw UsageError("--mode must be single, decentralized or centralized");
  std::cout << fmt6(lambda) << "\n";
  return 0;
}

int cmd_validate_clutter(const std::string& which, int n_s, int pulses, int burn_in, std::uint64_t seed) {
  ClutterConfig cfg;
  if (which == "default") {
    cfg.model = ClutterKind::default_model;
  } else if (which == "white") {
    cfg.model = ClutterKind::white;
  } else {
    if (!fs::is_regular_file(which)) throw ConfigError("no such model file '" + which + "'");
    cfg = load_scenario_file(which).clutter;
  }
  if (n_s < 1 || pulses < 1) throw UsageError("--n-s and --pulses must be >= 1");
  if (n_s * pulses < 512) throw UsageError("decay check needs n_s * pulses >= 512");

  const Ar2dModel model = model_from_config(cfg);  // throws UnstableModel
  std::cout << "model: " << which << " (AR " << model.p() << "x" << model.q() << ", "
            << (model.innovation().kind == InnovationKind::complex_t ? "complex_t nu=" + format_number(model.innovation().nu)
                                                                      : std::string("complex_gaussian"))
            << ")\n"
            << "stability: stable, min |P| on bicircle " << fmt6(model.stability().min_modulus) << "\n";

  Rng rng = make_stream(Stream::clutter, {seed});
  const ClutterField f = generate(model, n_s, pulses, burn_in, rng);
  const DecayReport d = validate_decay(f.vectorized);
  std::cout << "decay: gamma_fit=" << fmt6(d.gamma_fit) << " amplitude=" << fmt6(d.amplitude_fit)
            << " points=" << d.points_used << " -> " << (d.passes ? "pass" : "fail") << "\n";

  // Median power of the two halves; medians stay meaningful for heavy tails.
  const auto half_median = [&](Eigen::Index from, Eigen::Index len) {
    std::vector<double> p(static_cast<std::size_t>(len));
    for (Eigen::Index i = 0; i < len; ++i) p[static_cast<std::size_t>(i)] = std::norm(f.vectorized(from + i));
    std::nth_element(p.begin(), p.begin() + len / 2, p.end());
    return p[static_cast<std::size_t>(len / 2)];
  };
  const Eigen::Index h = f.vectorized.size() / 2;
  const double ratio = half_median(h, h) / half_median(0, h);
  const bool stationary = ratio > 0.8 && ratio < 1.25;
  std::cout << "stationarity: median power ratio of halves " << fmt6(ratio) << " -> " << (stationary ? "pass" : "fail")
            << "\n";

  const bool ok = d.passes && stationary;
  std::cout << "result: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : kRuntimeError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cognitive radar network detection simulator"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run a Monte Carlo campaign and write CSV metrics plus a manifest");
  run_cmd->add_option("scenario", run.scenario_file, "Scenario config file");
  run_cmd->add_option("--manifest", run.manifest_file, "Re-run the campaign recorded in this manifest");
  run_cmd->add_option("--policy", run.policy, "optimal|orthogonal|adaptive|scanning|sarsa|all");
  run_cmd->add_option("--trials", run.trials, "Monte Carlo trials");
  run_cmd->add_option("--seed", run.seed, "First trial seed");
  run_cmd->add_option("--out-dir", run.out_dir, "Output directory");
  run_cmd->add_option("--workers", run.workers, "Worker threads");
  run_cmd->add_flag("--svg", run.svg, "Also write SVG line plots");
  run_cmd->add_flag("--exclude-adjacent", run.exclude_adjacent, "Skip bins next to a target when counting false alarms");

  double pfa = 0.0;
  int radars = 1;
  std::string mode = "decentralized";
  auto* thr_cmd = app.add_subcommand("threshold", "Print the detection threshold for a false-alarm rate");
  thr_cmd->add_option("--pfa", pfa, "Nominal false-alarm probability")->required();
  thr_cmd->add_option("--radars", radars, "Number of fused radars");
  thr_cmd->add_option("--mode", mode, "single|decentralized|centralized");

  std::string which = "default";
  int n_s = 16, pulses = 256, burn_in = 200;
  std::uint64_t cseed = 1;
  auto* val_cmd = app.add_subcommand("validate-clutter", "Generate a clutter field and check decay and stationarity");
  val_cmd->add_option("model", which, "default, white, or a config file with a [clutter] section");
  val_cmd->add_option("--n-s", n_s, "Spatial channels");
  val_cmd->add_option("--pulses", pulses, "Pulses");
  val_cmd->add_option("--burn-in", burn_in, "Burn-in rows and columns");
  val_cmd->add_option("--seed", cseed, "Generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kConfigError;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*thr_cmd) return cmd_threshold(pfa, radars, mode);
    if (*val_cmd) return cmd_validate_clutter(which, n_s, pulses, burn_in, cseed);
  } catch (const UnstableModel& e) {
    std::cerr << "error: unstable clutter model: " << e.what() << "\n";
    return kRuntimeError;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kConfigError;
}
