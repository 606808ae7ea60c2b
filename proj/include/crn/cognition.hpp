#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "crn/detector.hpp"
#include "crn/rng.hpp"
#include "crn/scenario.hpp"

namespace crn {

struct RlState {
  int s = 0;
  friend bool operator==(const RlState&, const RlState&) = default;
};

struct RlAction {
  int a = 0;
  std::vector<int> bins;
  friend bool operator==(const RlAction&, const RlAction&) = default;
};

struct QTable {
  Eigen::MatrixXd q;  // (t_max + 1) x (b_max + 1)
  double learning_rate = 0.5;
  double discount = 0.8;
  double epsilon = 0.1;

  int t_max() const { return static_cast<int>(q.rows()) - 1; }
  int b_max() const { return static_cast<int>(q.cols()) - 1; }
};

enum class Policy { optimal, orthogonal, adaptive, scanning, sarsa };

QTable make_qtable(int t_max, int b_max, const SarsaConfig& cfg);

/// Epsilon at a CPI, with the optional linear decay applied.
double epsilon_at(const SarsaConfig& cfg, int cpi);

RlState extract_state(const StatisticVector& stat, int t_max);

/// Bins whose statistic reached the threshold, ascending.
std::vector<int> detected_bins(const StatisticVector& stat);

double compute_reward(const StatisticVector& stat, const std::vector<int>& detected);

/// The `a` largest statistics; ties go to the lower bin. Returned ascending.
std::vector<int> top_bins(const std::vector<double>& lambda, int a);

RlAction select_action_sarsa(const QTable& qt, RlState state, const StatisticVector& stat, Rng& rng);

QTable update_sarsa(QTable qt, RlState s, const RlAction& a, double r, RlState s_next, const RlAction& a_next);

struct PolicyContext {
  int cpi = 0;
  int n_bins = 0;
  int b_max = 0;
  // Ground-truth bins in reference order; required by the optimal policy.
  const std::vector<int>* truth_bins = nullptr;
  // Statistics of the previous CPI; used by the adaptive policy.
  const StatisticVector* previous = nullptr;
};

RlAction baseline_policy(Policy kind, const PolicyContext& ctx);

std::string to_string(Policy p);
Policy parse_policy(const std::string& s);

/// Header line "qtable <rows> <cols> <learning_rate> <discount> <epsilon>"
/// followed by one row of the matrix per line.
void write_qtable(std::ostream& out, const QTable& qt);
QTable read_qtable(std::istream& in);

}  // namespace crn
