#include "crn/cognition.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace crn {

QTable make_qtable(int t_max, int b_max, const SarsaConfig& cfg) {
  if (t_max < 0 || b_max < 0) throw std::invalid_argument("make_qtable: negative dimensions");
  QTable qt;
  qt.q = Eigen::MatrixXd::Zero(t_max + 1, b_max + 1);
  qt.learning_rate = cfg.learning_rate;
  qt.discount = cfg.discount;
  qt.epsilon = cfg.epsilon;
  return qt;
}

double epsilon_at(const SarsaConfig& cfg, int cpi) {
  if (!cfg.epsilon_decay) return cfg.epsilon;
  if (cpi >= cfg.epsilon_decay_cpis) return cfg.epsilon_final;
  const double w = static_cast<double>(cpi) / cfg.epsilon_decay_cpis;
  return cfg.epsilon + w * (cfg.epsilon_final - cfg.epsilon);
}

RlState extract_state(const StatisticVector& stat, int t_max) {
  int count = 0;
  for (bool d : stat.decisions) count += d ? 1 : 0;
  return {std::min(count, t_max)};
}

std::vector<int> detected_bins(const StatisticVector& stat) {
  std::vector<int> out;
  for (std::size_t l = 0; l < stat.decisions.size(); ++l)
    if (stat.decisions[l]) out.push_back(static_cast<int>(l));
  return out;
}

double compute_reward(const StatisticVector& stat, const std::vector<int>& detected) {
  std::vector<char> in(stat.pd_estimates.size(), 0);
  for (int b : detected) in.at(static_cast<std::size_t>(b)) = 1;
  double r = 0.0;
  for (std::size_t l = 0; l < stat.pd_estimates.size(); ++l) r += in[l] ? stat.pd_estimates[l] : -stat.pd_estimates[l];
  return r;
}

std::vector<int> top_bins(const std::vector<double>& lambda, int a) {
  std::vector<int> idx(lambda.size());
  std::iota(idx.begin(), idx.end(), 0);
  a = std::clamp(a, 0, static_cast<int>(lambda.size()));
  std::partial_sort(idx.begin(), idx.begin() + a, idx.end(), [&lambda](int i, int j) {
    const double li = lambda[static_cast<std::size_t>(i)], lj = lambda[static_cast<std::size_t>(j)];
    return li > lj || (li == lj && i < j);
  });
  std::vector<int> out(idx.begin(), idx.begin() + a);
  std::sort(out.begin(), out.end());
  return out;
}

RlAction select_action_sarsa(const QTable& qt, RlState state, const StatisticVector& stat, Rng& rng) {
  const int b_max = qt.b_max();
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  int a = 0;
  if (qt.epsilon > 0.0 && coin(rng) < qt.epsilon) {
    a = std::uniform_int_distribution<int>(0, b_max)(rng);
  } else {
    const auto row = qt.q.row(state.s);
    for (int k = 1; k <= b_max; ++k)
      if (row(k) > row(a)) a = k;
  }
  return {a, top_bins(stat.lambda, a)};
}

QTable update_sarsa(QTable qt, RlState s, const RlAction& a, double r, RlState s_next, const RlAction& a_next) {
  if (s.s < 0 || s.s > qt.t_max() || s_next.s < 0 || s_next.s > qt.t_max() || a.a < 0 || a.a > qt.b_max() ||
      a_next.a < 0 || a_next.a > qt.b_max())
    throw std::out_of_range("update_sarsa: index out of range");
  double& cell = qt.q(s.s, a.a);
  cell += qt.learning_rate * (r + qt.discount * qt.q(s_next.s, a_next.a) - cell);
  return qt;
}

RlAction baseline_policy(Policy kind, const PolicyContext& ctx) {
  switch (kind) {
    case Policy::orthogonal:
      return {0, {}};
    case Policy::scanning:
      return {1, {ctx.cpi % ctx.n_bins}};
    case Policy::optimal: {
      if (!ctx.truth_bins) throw std::invalid_argument("optimal policy needs ground truth");
      std::vector<int> bins = *ctx.truth_bins;
      std::sort(bins.begin(), bins.end());
      if (static_cast<int>(bins.size()) > ctx.b_max) bins.resize(static_cast<std::size_t>(ctx.b_max));
      return {static_cast<int>(bins.size()), bins};
    }
    case Policy::adaptive: {
      if (!ctx.previous) return {0, {}};
      std::vector<int> bins = detected_bins(*ctx.previous);
      if (static_cast<int>(bins.size()) > ctx.b_max) {
        // Keep the strongest detections when there are more than the beam can hold.
        bins = top_bins(ctx.previous->lambda, ctx.b_max);
      }
      return {static_cast<int>(bins.size()), bins};
    }
    case Policy::sarsa:
      break;
  }
  throw std::invalid_argument("baseline_policy: sarsa is not a baseline");
}

std::string to_string(Policy p) {
  switch (p) {
    case Policy::optimal: return "optimal";
    case Policy::orthogonal: return "orthogonal";
    case Policy::adaptive: return "adaptive";
    case Policy::scanning: return "scanning";
    case Policy::sarsa: return "sarsa";
  }
  return "sarsa";
}

Policy parse_policy(const std::string& s) {
  for (Policy p : {Policy::optimal, Policy::orthogonal, Policy::adaptive, Policy::scanning, Policy::sarsa})
    if (to_string(p) == s) return p;
  throw std::invalid_argument("unknown policy '" + s + "'");
}

void write_qtable(std::ostream& out, const QTable& qt) {
  out.precision(17);
  out << "qtable " << qt.q.rows() << " " << qt.q.cols() << " " << qt.learning_rate << " " << qt.discount << " "
      << qt.epsilon << "\n";
  for (Eigen::Index i = 0; i < qt.q.rows(); ++i) {
    for (Eigen::Index j = 0; j < qt.q.cols(); ++j) out << (j ? " " : "") << qt.q(i, j);
    out << "\n";
  }
}

QTable read_qtable(std::istream& in) {
  std::string tag;
  Eigen::Index rows = 0, cols = 0;
  QTable qt;
  if (!(in >> tag >> rows >> cols >> qt.learning_rate >> qt.discount >> qt.epsilon) || tag != "qtable" || rows < 1 ||
      cols < 1)
    throw std::runtime_error("read_qtable: bad header");
  qt.q.resize(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      if (!(in >> qt.q(i, j))) throw std::runtime_error("read_qtable: truncated matrix");
  return qt;
}

}  // namespace crn
