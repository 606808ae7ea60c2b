#include "crn/detector.hpp"

#include <cmath>
#include <stdexcept>

namespace crn {

cplx BandedCovariance::at(int i, int j) const {
  const int d = j - i;
  if (d > lag || -d > lag) return 0.0;
  if (d >= 0) return diagonals[static_cast<std::size_t>(d)][i];
  return std::conj(diagonals[static_cast<std::size_t>(-d)][j]);
}

CMat BandedCovariance::dense() const {
  CMat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = at(i, j);
  return g;
}

cplx estimate_alpha(const CVec& x, const CVec& v) {
  const double vv = v.squaredNorm();
  if (!(vv > 0.0)) throw std::invalid_argument("estimate_alpha: zero steering vector");
  if (x.size() != v.size()) throw std::invalid_argument("estimate_alpha: length mismatch");
  return v.dot(x) / vv;
}

BandedCovariance banded_covariance(const CVec& residual, int lag) {
  const auto n = static_cast<int>(residual.size());
  if (lag < 0 || lag >= n) throw std::invalid_argument("banded_covariance: lag must lie in [0, N)");
  BandedCovariance g;
  g.n = n;
  g.lag = lag;
  g.diagonals.reserve(static_cast<std::size_t>(lag) + 1);
  for (int d = 0; d <= lag; ++d)
    g.diagonals.push_back(residual.head(n - d).cwiseProduct(residual.tail(n - d).conjugate()));
  return g;
}

double quadratic_form(const BandedCovariance& g, const CVec& v) {
  if (v.size() != g.n) throw std::invalid_argument("quadratic_form: length mismatch");
  const int n = g.n;
  double q = 0.0;
  for (int i = 0; i < n; ++i) q += (std::conj(v[i]) * g.diagonals[0][i] * v[i]).real();
  for (int d = 1; d <= g.lag; ++d) {
    cplx acc = 0.0;
    const CVec& diag = g.diagonals[static_cast<std::size_t>(d)];
    for (int i = 0; i + d < n; ++i) acc += std::conj(v[i]) * diag[i] * v[i + d];
    q += 2.0 * acc.real();
  }
  return q;
}

int truncation_lag(int n, double kappa, double kappa_cap) {
  const double k = std::min(kappa, kappa_cap);
  const int l = static_cast<int>(std::ceil(std::pow(static_cast<double>(n), k) - 1e-9));
  return std::max(0, std::min(l, n - 1));
}

WaldResult wald_statistic_at_lag(const CVec& x, const CVec& v, int lag) {
  if (x.size() != v.size()) throw std::invalid_argument("wald_statistic: length mismatch");
  if (v.size() < 2) throw std::invalid_argument("wald_statistic: N must be >= 2");
  const cplx alpha = estimate_alpha(x, v);
  const CVec resid = x - alpha * v;
  const double num = 2.0 * std::norm(v.dot(x));
  const double q = quadratic_form(banded_covariance(resid, lag), v);
  const double q_floor = 1e-12 * v.squaredNorm() * resid.squaredNorm() / static_cast<double>(resid.size());
  WaldResult r;
  if (q > q_floor) {
    r.lambda = num / q;
    return r;
  }
  r.floored = true;
  if (q_floor > 0.0) r.lambda = num / q_floor;
  else r.lambda = num > 0.0 ? INFINITY : 0.0;
  return r;
}

double wald_statistic(const CVec& x, const CVec& v, double kappa, double kappa_cap) {
  return wald_statistic_at_lag(x, v, truncation_lag(static_cast<int>(v.size()), kappa, kappa_cap)).lambda;
}

double cfar_threshold(double pfa) {
  if (!(pfa > 0.0 && pfa < 1.0)) throw std::domain_error("cfar_threshold: pfa must lie in (0,1)");
  return -2.0 * std::log(pfa);
}

double estimate_pd(double lambda_stat, double threshold) {
  if (std::isinf(lambda_stat)) return 1.0;
  return marcum_q1(std::sqrt(std::max(0.0, lambda_stat)), std::sqrt(std::max(0.0, threshold)));
}

StatisticVector make_statistic_vector(std::vector<double> lambda, double threshold, int cpi) {
  StatisticVector s;
  s.lambda = std::move(lambda);
  s.threshold = threshold;
  s.cpi = cpi;
  s.decisions.resize(s.lambda.size());
  s.pd_estimates.resize(s.lambda.size());
  for (std::size_t l = 0; l < s.lambda.size(); ++l) {
    s.decisions[l] = s.lambda[l] >= threshold;
    s.pd_estimates[l] = estimate_pd(s.lambda[l], threshold);
  }
  return s;
}

StatisticVector detect_cpi(const std::vector<CpiReturn>& returns, const std::vector<VirtualSteering>& steerings,
                           const RadarParams& params, FloorTally* tally) {
  const auto L = static_cast<std::size_t>(params.n_bins);
  if (returns.size() != L || steerings.size() != L) throw std::invalid_argument("detect_cpi: expected one return per bin");
  const int lag = truncation_lag(params.n_total(), params.kappa, params.kappa_cap);
  std::vector<double> lambda(L, 0.0);
  for (std::size_t l = 0; l < L; ++l) {
    // A bin with no transmitted energy has nothing to test.
    if (steerings[l].v.squaredNorm() == 0.0) continue;
    const WaldResult r = wald_statistic_at_lag(returns[l].x, steerings[l].v, lag);
    if (tally) tally->add(r);
    lambda[l] = r.lambda;
  }
  return make_statistic_vector(std::move(lambda), cfar_threshold(params.pfa_nominal), returns.empty() ? 0 : returns[0].cpi);
}

}  // namespace crn
