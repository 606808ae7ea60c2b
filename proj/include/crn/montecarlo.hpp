#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "crn/cognition.hpp"
#include "crn/detector.hpp"
#include "crn/scenario.hpp"

namespace crn {

using DecisionMatrix = std::vector<std::vector<bool>>;  // [cpi][bin]

struct TrialResult {
  DecisionMatrix per_cpi_decisions;
  std::vector<std::vector<double>> per_cpi_pd;      // fused P_D estimates, reference order
  std::vector<std::vector<double>> per_cpi_lambda;  // fused statistics, reference order
  std::vector<int> per_cpi_state;
  std::vector<RlAction> actions;  // action applied during each CPI
  std::vector<double> rewards;
  std::uint64_t seed = 0;
  FloorTally floor;

  friend bool operator==(const TrialResult& a, const TrialResult& b) {
    return a.per_cpi_decisions == b.per_cpi_decisions && a.per_cpi_pd == b.per_cpi_pd &&
           a.per_cpi_lambda == b.per_cpi_lambda && a.per_cpi_state == b.per_cpi_state && a.actions == b.actions &&
           a.rewards == b.rewards && a.seed == b.seed;
  }
};

struct MetricsReport {
  Policy policy = Policy::sarsa;
  int n_trials = 0;
  int n_cpis = 0;
  // Keyed by reference bin; NaN where no target occupies the bin.
  std::map<int, std::vector<double>> pd_curve;
  std::map<int, std::vector<double>> pacq_curve;
  double pfa_measured = 0.0;
  std::uint64_t false_alarms = 0;
  std::uint64_t opportunities = 0;
  FloorTally floor;
};

struct CampaignOptions {
  int workers = 1;
  // Leave bins next to a target out of the false-alarm count.
  bool exclude_adjacent = false;
};

TrialResult run_trial(const Scenario& scenario, Policy policy, std::uint64_t seed);

/// Trials seed0 .. seed0 + n_trials - 1, returned in seed order.
std::vector<TrialResult> run_trials(const Scenario& scenario, Policy policy, int n_trials, std::uint64_t seed0,
                                    int workers);

MetricsReport aggregate(const Scenario& scenario, Policy policy, const std::vector<TrialResult>& trials,
                        const CampaignOptions& opts = {});

MetricsReport run_campaign(const Scenario& scenario, Policy policy, int n_trials, std::uint64_t seed0,
                           const CampaignOptions& opts = {});

/// 1 at CPI p when the window of n CPIs ending at p is complete and holds at
/// least m detections of target_bin, else 0.
std::vector<double> acquisition_curve(const DecisionMatrix& decisions, int target_bin, int m, int n);

/// Per-bin occupancy: occupied[p][l] is true when a target sits in bin l at CPI p.
std::vector<std::vector<bool>> occupancy(const Scenario& scenario);

}  // namespace crn
