#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "crn/array_signal.hpp"
#include "crn/rng.hpp"
#include "crn/scenario.hpp"

namespace crn {

class UnstableModel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Innovation {
  InnovationKind kind = InnovationKind::complex_t;
  double nu = 2.0;
  double sigma2 = 1.0;
};

struct StabilityReport {
  bool stable = false;
  // Smallest |1 - sum phi_ij z1^-i z2^-j| found on the bicircle grid.
  double min_modulus = 0.0;
  // P(z1, 1) and P(1, z2) free of zeros outside the open unit disk.
  bool edges_stable = false;
};

/// Stability of the 2-D AR filter 1 - sum_ij phi_ij z1^-i z2^-j: the
/// bicircle grid test (tolerance 1e-6) plus the two 1-D edge conditions.
StabilityReport check_stability(const CMat& phi, int grid = 128);

/// 2-D AR(p, q) model: c[n,k] = sum_{i<=p, j<=q} phi(i-1, j-1) c[n-i, k-j] + e[n,k].
/// Construction rejects unstable coefficient matrices.
class Ar2dModel {
 public:
  Ar2dModel(CMat phi, Innovation innovation);

  const CMat& phi() const { return phi_; }
  const Innovation& innovation() const { return innovation_; }
  int p() const { return static_cast<int>(phi_.rows()); }
  int q() const { return static_cast<int>(phi_.cols()); }
  bool real_coefficients() const { return real_; }
  const StabilityReport& stability() const { return stability_; }

 private:
  CMat phi_;
  Innovation innovation_;
  bool real_ = true;
  StabilityReport stability_;
};

struct ClutterField {
  CMat c;            // n_s x K
  CVec vectorized;   // column-major vec(c), channel index fastest
  double sigma_c2 = 0.0;
};

/// Coefficients a_1..a_m with 1 - sum a_i z^-i = prod (1 - r_k z^-1).
CVec ar_coefficients_from_poles(const std::vector<cplx>& poles);

Ar2dModel default_model();
Ar2dModel white_model(const Innovation& innovation);
Ar2dModel separable_model(const CVec& phi_spatial, const CVec& phi_temporal, const Innovation& innovation);
Ar2dModel model_from_config(const ClutterConfig& cfg);

/// Draws innovations in a fixed order from one generator.
class InnovationSampler {
 public:
  explicit InnovationSampler(const Innovation& innovation);
  cplx operator()(Rng& rng);

 private:
  Innovation innovation_;
  std::normal_distribution<double> normal_;
  std::chi_squared_distribution<double> chi2_;
};

cplx sample_complex_t(double nu, double sigma2, Rng& rng);

/// Runs the recursion over an (n_s + burn_in) x (K + burn_in) grid from zero
/// and keeps the trailing n_s x K block. Memoryless models skip the burn-in.
ClutterField generate(const Ar2dModel& model, int n_s, int pulses, int burn_in, Rng& rng);

/// Innovation scatter sigma^2 times the energy of the filter impulse response.
/// Equals the stationary variance for Gaussian innovations and stays finite
/// for complex-t innovations with nu <= 2.
double nominal_power(const Ar2dModel& model);

CVec vectorize(const CMat& c);
CMat devectorize(const CVec& v, int n_s);

/// |rho[r]| for r = 0..max_lag, biased estimator normalized by lag 0.
std::vector<double> empirical_autocorrelation(const CVec& c_vec, int max_lag);

struct DecayReport {
  double gamma_fit = 0.0;
  double amplitude_fit = 1.0;
  bool passes = false;
  int points_used = 0;
};

/// Fits an A*gamma^r envelope to the decaying maxima of the autocorrelation.
DecayReport validate_decay(const CVec& c_vec);

/// uint64 count followed by interleaved float32 (re, im), little-endian.
void write_field_binary(std::ostream& out, const CVec& values);
CVec read_field_binary(std::istream& in);

}  // namespace crn
