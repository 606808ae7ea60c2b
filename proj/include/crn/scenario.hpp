#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crn {

/// Thrown for malformed scenario text or a violated configuration invariant.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RadarParams {
  int n_tx = 4;
  int n_rx = 4;
  int pulses_per_cpi = 32;
  int n_bins = 20;
  double kappa = 0.8;
  double kappa_cap = 0.2;
  double total_power = 1.0;
  double pri_seconds = 5e-6;
  double pfa_nominal = 1e-4;

  int n_channels() const { return n_tx * n_rx; }
  int n_total() const { return n_tx * n_rx * pulses_per_cpi; }

  friend bool operator==(const RadarParams&, const RadarParams&) = default;
};

/// Element-level SNR in dB over CPIs. One knot means a constant; otherwise
/// linear interpolation between (cpi, dB) knots, held flat outside them.
struct SnrProfile {
  std::vector<std::pair<int, double>> knots;

  double at(int cpi) const;
  static SnrProfile constant(double db) { return SnrProfile{{{0, db}}}; }

  friend bool operator==(const SnrProfile&, const SnrProfile&) = default;
};

struct TargetEvent {
  int cpi_start = 0;
  int cpi_end = 0;
  int bin = 0;
  std::vector<SnrProfile> snr_db_per_radar;
  // Offset from the bin centre as a fraction of the bin width.
  double angle_offset = 0.0;

  friend bool operator==(const TargetEvent&, const TargetEvent&) = default;
};

enum class FusionMode { centralized, decentralized, none };

struct NetworkConfig {
  int n_radars = 1;
  // bin_mapping[i][l] is radar i's local bin for reference bin l.
  std::vector<std::vector<int>> bin_mapping;
  FusionMode fusion_mode = FusionMode::none;
  std::vector<std::uint64_t> rng_seeds;

  friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

struct ScenarioTimeline {
  int n_cpis = 1;
  std::vector<TargetEvent> events;
  int t_max = 5;
  int m_acq = 3;
  int n_acq = 5;

  friend bool operator==(const ScenarioTimeline&, const ScenarioTimeline&) = default;
};

enum class ClutterKind { default_model, white, separable, general };
enum class InnovationKind { complex_gaussian, complex_t };

struct ClutterConfig {
  ClutterKind model = ClutterKind::default_model;
  InnovationKind innovation = InnovationKind::complex_t;
  double nu = 2.0;
  double sigma2 = 1.0;
  int burn_in = 200;
  bool shared_across_bins = false;
  std::vector<std::complex<double>> phi_spatial;
  std::vector<std::complex<double>> phi_temporal;
  int p = 0;
  int q = 0;
  std::vector<std::complex<double>> phi;  // row-major p x q

  friend bool operator==(const ClutterConfig&, const ClutterConfig&) = default;
};

struct SarsaConfig {
  double learning_rate = 0.5;
  double discount = 0.8;
  double epsilon = 0.1;
  bool epsilon_decay = false;
  double epsilon_final = 0.01;
  int epsilon_decay_cpis = 100;

  friend bool operator==(const SarsaConfig&, const SarsaConfig&) = default;
};

struct Scenario {
  RadarParams radar;
  NetworkConfig network;
  ScenarioTimeline timeline;
  ClutterConfig clutter;
  SarsaConfig sarsa;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct ActiveTarget {
  int bin = 0;
  std::vector<double> snr_db;
  double angle_offset = 0.0;
  int event = 0;

  friend bool operator==(const ActiveTarget&, const ActiveTarget&) = default;
};

Scenario load_scenario(const std::string& text);
Scenario load_scenario_file(const std::string& path);

/// Canonical text form; load_scenario(to_text(s)) reproduces s.
std::string to_text(const Scenario& s);

/// Checks every invariant; throws ConfigError naming the first violation.
void validate(const Scenario& s);

std::vector<ActiveTarget> active_targets(const ScenarioTimeline& timeline, int p);

/// Largest number of bins an action may illuminate.
int max_beam_bins(const Scenario& s);

std::string to_string(FusionMode m);
FusionMode parse_fusion_mode(const std::string& s);

}  // namespace crn
