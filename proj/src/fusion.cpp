#include "crn/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace crn {

double chi2_even_survival(double x, int r) {
  if (r < 1) throw std::invalid_argument("chi2_even_survival: r must be >= 1");
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(static_cast<double>(r), 0.5 * x);
}

double centralized_threshold(double pfa, int n_radars) {
  if (!(pfa > 0.0 && pfa < 1.0)) throw std::domain_error("centralized_threshold: pfa must lie in (0,1)");
  if (n_radars < 1) throw std::invalid_argument("centralized_threshold: R must be >= 1");
  if (n_radars == 1) return cfar_threshold(pfa);
  return 2.0 * boost::math::gamma_q_inv(static_cast<double>(n_radars), pfa);
}

double decentralized_threshold(double pfa, int n_radars) {
  if (!(pfa > 0.0 && pfa < 1.0)) throw std::domain_error("decentralized_threshold: pfa must lie in (0,1)");
  if (n_radars < 1) throw std::invalid_argument("decentralized_threshold: R must be >= 1");
  // 1 - (1 - pfa)^(1/R), evaluated without cancellation.
  const double per_radar = -std::expm1(std::log1p(-pfa) / n_radars);
  return -2.0 * std::log(per_radar);
}

double decentralized_pfa(double threshold, int n_radars) {
  return -std::expm1(n_radars * std::log1p(-std::exp(-0.5 * threshold)));
}

double decentralized_pfa_quadrature(double threshold, int n_radars) {
  auto integrand = [n_radars, threshold](double u) {
    const double x = threshold + u;
    const double f = 0.5 * std::exp(-0.5 * x);
    const double F = -std::expm1(-0.5 * x);
    return n_radars * std::pow(F, n_radars - 1) * f;
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate(integrand, 0.0, std::numeric_limits<double>::infinity());
}

double fused_pd(const std::vector<double>& stats_per_radar, double threshold) {
  double miss = 1.0;
  for (double s : stats_per_radar) miss *= 1.0 - estimate_pd(s, threshold);
  return 1.0 - miss;
}

std::vector<double> to_reference_order(const std::vector<double>& local, const std::vector<int>& mapping) {
  if (local.size() != mapping.size()) throw std::invalid_argument("to_reference_order: length mismatch");
  std::vector<double> out(local.size());
  for (std::size_t l = 0; l < mapping.size(); ++l) out[l] = local[static_cast<std::size_t>(mapping[l])];
  return out;
}

FusedCpi fuse_centralized(const RadarReturns& returns, const RadarSteerings& steerings, const RadarParams& params,
                          const NetworkConfig& net, FloorTally* tally) {
  const int R = net.n_radars;
  const auto L = static_cast<std::size_t>(params.n_bins);
  if (static_cast<int>(returns.size()) != R || static_cast<int>(steerings.size()) != R)
    throw std::invalid_argument("fuse_centralized: missing radar data");
  if (static_cast<int>(net.bin_mapping.size()) != R) throw std::invalid_argument("fuse_centralized: bin-mapping mismatch");
  for (int i = 0; i < R; ++i) {
    if (returns[static_cast<std::size_t>(i)].size() != L || steerings[static_cast<std::size_t>(i)].size() != L ||
        net.bin_mapping[static_cast<std::size_t>(i)].size() != L)
      throw std::invalid_argument("fuse_centralized: bin-mapping mismatch");
  }
  const int n = params.n_total();
  const int lag = truncation_lag(n, params.kappa, params.kappa_cap);
  FusedCpi out;
  out.mode = FusionMode::centralized;
  out.weights_used.assign(L, std::vector<cplx>(static_cast<std::size_t>(R), 0.0));
  std::vector<double> lambda(L, 0.0);
  for (std::size_t l = 0; l < L; ++l) {
    CVec xbar = CVec::Zero(n);
    CVec vbar = CVec::Zero(n);
    for (int i = 0; i < R; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      const auto local = static_cast<std::size_t>(net.bin_mapping[iu][l]);
      const CVec& x = returns[iu][local].x;
      const CVec& v = steerings[iu][local].v;
      if (x.size() != n || v.size() != n) throw std::invalid_argument("fuse_centralized: return length != N");
      if (v.squaredNorm() == 0.0) continue;
      const cplx w = estimate_alpha(x, v);
      out.weights_used[l][iu] = w;
      xbar += std::conj(w) * x;
      vbar += std::norm(w) * v;
    }
    if (xbar.norm() < 1e-30 || vbar.squaredNorm() == 0.0) continue;
    const WaldResult r = wald_statistic_at_lag(xbar, vbar, lag);
    if (tally) tally->add(r);
    lambda[l] = r.lambda;
  }
  out.statistic = make_statistic_vector(std::move(lambda), centralized_threshold(params.pfa_nominal, R),
                                        returns[0].empty() ? 0 : returns[0][0].cpi);
  return out;
}

FusedCpi fuse_decentralized(const std::vector<StatisticVector>& stats, const NetworkConfig& net, double pfa) {
  const int R = static_cast<int>(stats.size());
  if (R < 1) throw std::invalid_argument("fuse_decentralized: no radars");
  if (static_cast<int>(net.bin_mapping.size()) != R) throw std::invalid_argument("fuse_decentralized: bin-mapping mismatch");
  const std::size_t L = stats[0].lambda.size();
  std::vector<std::vector<double>> ref(static_cast<std::size_t>(R));
  for (int i = 0; i < R; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    if (stats[iu].lambda.size() != L) throw std::invalid_argument("fuse_decentralized: length mismatch");
    ref[iu] = to_reference_order(stats[iu].lambda, net.bin_mapping[iu]);
  }
  const double threshold = decentralized_threshold(pfa, R);
  std::vector<double> fused(L, 0.0);
  for (std::size_t l = 0; l < L; ++l)
    for (int i = 0; i < R; ++i) fused[l] = std::max(fused[l], ref[static_cast<std::size_t>(i)][l]);
  FusedCpi out;
  out.mode = FusionMode::decentralized;
  out.statistic = make_statistic_vector(fused, threshold, stats[0].cpi);
  std::vector<double> per(static_cast<std::size_t>(R));
  for (std::size_t l = 0; l < L; ++l) {
    for (int i = 0; i < R; ++i) per[static_cast<std::size_t>(i)] = ref[static_cast<std::size_t>(i)][l];
    out.statistic.pd_estimates[l] = fused_pd(per, threshold);
  }
  return out;
}

double combined_snr(const std::vector<cplx>& w, const std::vector<cplx>& alpha, const std::vector<cplx>& v,
                    const std::vector<double>& gamma) {
  const std::size_t R = w.size();
  if (alpha.size() != R || v.size() != R || gamma.size() != R) throw std::invalid_argument("combined_snr: length mismatch");
  cplx num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < R; ++i) {
    num += std::conj(w[i]) * alpha[i] * v[i];
    den += std::norm(w[i]) * gamma[i];
  }
  return std::norm(num) / den;
}

}  // namespace crn
