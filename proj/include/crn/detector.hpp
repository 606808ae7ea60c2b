#pragma once

#include <cstdint>
#include <vector>

#include "crn/array_signal.hpp"
#include "crn/scenario.hpp"

namespace crn {

/// Hermitian banded matrix stored by diagonals: diagonals[d][i] = G(i, i+d).
struct BandedCovariance {
  std::vector<CVec> diagonals;
  int n = 0;
  int lag = 0;

  cplx at(int i, int j) const;
  CMat dense() const;
};

struct StatisticVector {
  std::vector<double> lambda;
  double threshold = 0.0;
  std::vector<bool> decisions;
  std::vector<double> pd_estimates;
  int cpi = 0;
};

struct WaldResult {
  double lambda = 0.0;
  bool floored = false;
};

/// Counts how often the denominator floor engaged.
struct FloorTally {
  std::uint64_t calls = 0;
  std::uint64_t floored = 0;

  void add(const WaldResult& r) {
    ++calls;
    floored += r.floored ? 1 : 0;
  }
  void merge(const FloorTally& o) {
    calls += o.calls;
    floored += o.floored;
  }
  // More than one floor event per 1000 calls means the clutter model is off.
  bool excessive() const { return floored * 1000 > calls && floored > 1; }
};

/// Least-squares amplitude (v^H x)/(v^H v).
cplx estimate_alpha(const CVec& x, const CVec& v);

BandedCovariance banded_covariance(const CVec& residual, int lag);

/// v^H G v summed over the band, O(N * lag).
double quadratic_form(const BandedCovariance& g, const CVec& v);

/// l = ceil(N^min(kappa, kappa_cap)), at most N - 1.
int truncation_lag(int n, double kappa, double kappa_cap);

/// 2|v^H x|^2 / max(v^H G v, q_floor) with G banded at `lag`.
WaldResult wald_statistic_at_lag(const CVec& x, const CVec& v, int lag);
double wald_statistic(const CVec& x, const CVec& v, double kappa, double kappa_cap = 0.2);

/// Inverse survival of the central chi-squared with 2 degrees of freedom.
double cfar_threshold(double pfa);

/// First-order Marcum Q by the modified-Bessel series.
double marcum_q1(double a, double b);

/// exp(-x) I_0(x).
double bessel_i0_scaled(double x);

double estimate_pd(double lambda_stat, double threshold);

/// Fills decisions and P_D estimates from statistics and a threshold.
StatisticVector make_statistic_vector(std::vector<double> lambda, double threshold, int cpi);

StatisticVector detect_cpi(const std::vector<CpiReturn>& returns, const std::vector<VirtualSteering>& steerings,
                           const RadarParams& params, FloorTally* tally = nullptr);

}  // namespace crn
