#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "crn/scenario.hpp"

namespace crn {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

struct SteeringPair {
  CVec tx_steering;
  CVec rx_steering;
  double angle_rad = 0.0;
};

struct Beamformer {
  CMat weights;  // N_T x N_T
  std::vector<int> illuminated_bins;
};

struct VirtualSteering {
  CVec v;
  int bin = 0;
};

struct CpiReturn {
  CVec x;
  int radar = 0;
  int bin = 0;
  int cpi = 0;
};

struct TargetAmplitude {
  int bin = 0;
  cplx alpha;
  double angle_offset = 0.0;
};

/// Half-wavelength ULA manifold: entry m is exp(j*pi*m*sin(angle)).
CVec steering(double angle_rad, int n_elems);

/// Centres -pi/2 + (l + 0.5)*pi/L of L equal partitions of [-pi/2, pi/2).
std::vector<double> bin_centers(int n_bins);

/// Angle of a point inside bin `bin`, offset by a fraction of the bin width.
double bin_angle(int bin, int n_bins, double offset = 0.0);

SteeringPair steering_pair(double angle_rad, const RadarParams& params);

/// Empty bins gives the orthogonal flood beam sqrt(P/N_T)*I. Otherwise column
/// b < B is conj(a(phi_b))*sqrt(P/(B*N_T)) and the remaining columns are zero.
Beamformer make_beamformer(const std::vector<int>& bins, const RadarParams& params);

/// (W^T a) kron b for one pulse, length N_T*M_R.
CVec pulse_steering(const Beamformer& bf, double angle_rad, const RadarParams& params);

/// K-fold stack of the per-pulse vector.
VirtualSteering virtual_steering(const Beamformer& bf, int bin, const RadarParams& params, double angle_offset = 0.0);

CpiReturn synthesize_return(const std::vector<TargetAmplitude>& targets, const Beamformer& bf, const CVec& clutter,
                            int bin, const RadarParams& params);

/// |alpha| for an element-level SNR in dB against disturbance power sigma_c2.
double amplitude_from_snr(double snr_db, double sigma_c2);

}  // namespace crn
