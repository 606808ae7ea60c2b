#pragma once

#include <vector>

#include "crn/array_signal.hpp"
#include "crn/detector.hpp"
#include "crn/scenario.hpp"

namespace crn {

struct FusedCpi {
  FusionMode mode = FusionMode::decentralized;
  StatisticVector statistic;  // reference-radar bin order
  // weights_used[l][i]: MRC weight of radar i in reference bin l (centralized only).
  std::vector<std::vector<cplx>> weights_used;
};

/// Per-radar, per-local-bin data: outer index radar, inner index local bin.
using RadarReturns = std::vector<std::vector<CpiReturn>>;
using RadarSteerings = std::vector<std::vector<VirtualSteering>>;

/// Survival of the central chi-squared with 2r degrees of freedom.
double chi2_even_survival(double x, int r);

/// Threshold for the MRC-fused statistic, which behaves as chi-squared with
/// 2R degrees of freedom under H0 once the weights are estimated.
double centralized_threshold(double pfa, int n_radars);

double decentralized_threshold(double pfa, int n_radars);

/// P_FA of max fusion for i.i.d. chi-squared(2) statistics, closed form.
double decentralized_pfa(double threshold, int n_radars);

/// Same quantity by numerical integration of R F^(R-1) f over [threshold, inf).
double decentralized_pfa_quadrature(double threshold, int n_radars);

/// 1 - prod_i (1 - Q1(sqrt(L_i), sqrt(threshold))).
double fused_pd(const std::vector<double>& stats_per_radar, double threshold);

/// Reorders a radar's local-bin vector into reference order.
std::vector<double> to_reference_order(const std::vector<double>& local, const std::vector<int>& mapping);

FusedCpi fuse_centralized(const RadarReturns& returns, const RadarSteerings& steerings, const RadarParams& params,
                          const NetworkConfig& net, FloorTally* tally = nullptr);

/// stats[i] is radar i's vector in its own bin order.
FusedCpi fuse_decentralized(const std::vector<StatisticVector>& stats, const NetworkConfig& net, double pfa);

/// Instantaneous SNR at one sample for combining weights w:
/// |sum_i conj(w_i) alpha_i v_i|^2 / sum_i |w_i|^2 gamma_i.
double combined_snr(const std::vector<cplx>& w, const std::vector<cplx>& alpha, const std::vector<cplx>& v,
                    const std::vector<double>& gamma);

}  // namespace crn
