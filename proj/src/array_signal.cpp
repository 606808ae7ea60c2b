#include "crn/array_signal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace crn {

CVec steering(double angle_rad, int n_elems) {
  if (n_elems < 1) throw std::invalid_argument("steering: n_elems must be >= 1");
  CVec a(n_elems);
  const double phase = std::numbers::pi * std::sin(angle_rad);
  for (int m = 0; m < n_elems; ++m) a[m] = std::polar(1.0, phase * m);
  return a;
}

std::vector<double> bin_centers(int n_bins) {
  if (n_bins < 1) throw std::invalid_argument("bin_centers: L must be >= 1");
  std::vector<double> c(static_cast<std::size_t>(n_bins));
  for (int l = 0; l < n_bins; ++l) c[static_cast<std::size_t>(l)] = bin_angle(l, n_bins);
  return c;
}

double bin_angle(int bin, int n_bins, double offset) {
  const double width = std::numbers::pi / n_bins;
  return -std::numbers::pi / 2 + (bin + 0.5 + offset) * width;
}

SteeringPair steering_pair(double angle_rad, const RadarParams& params) {
  return {steering(angle_rad, params.n_tx), steering(angle_rad, params.n_rx), angle_rad};
}

Beamformer make_beamformer(const std::vector<int>& bins, const RadarParams& params) {
  const int nt = params.n_tx;
  if (static_cast<int>(bins.size()) > nt) throw std::invalid_argument("make_beamformer: more bins than transmit antennas");
  Beamformer bf;
  bf.illuminated_bins = bins;
  if (bins.empty()) {
    bf.weights = CMat::Identity(nt, nt) * std::sqrt(params.total_power / nt);
    return bf;
  }
  bf.weights = CMat::Zero(nt, nt);
  const double scale = std::sqrt(params.total_power / (static_cast<double>(bins.size()) * nt));
  for (std::size_t b = 0; b < bins.size(); ++b) {
    if (bins[b] < 0 || bins[b] >= params.n_bins) throw std::invalid_argument("make_beamformer: bin out of range");
    bf.weights.col(static_cast<Eigen::Index>(b)) = steering(bin_angle(bins[b], params.n_bins), nt).conjugate() * scale;
  }
  return bf;
}

CVec pulse_steering(const Beamformer& bf, double angle_rad, const RadarParams& params) {
  const CVec ta = bf.weights.transpose() * steering(angle_rad, params.n_tx);
  const CVec b = steering(angle_rad, params.n_rx);
  CVec out(params.n_channels());
  for (int t = 0; t < params.n_tx; ++t)
    for (int r = 0; r < params.n_rx; ++r) out[t * params.n_rx + r] = ta[t] * b[r];
  return out;
}

VirtualSteering virtual_steering(const Beamformer& bf, int bin, const RadarParams& params, double angle_offset) {
  if (bin < 0 || bin >= params.n_bins) throw std::invalid_argument("virtual_steering: bin out of range");
  const CVec block = pulse_steering(bf, bin_angle(bin, params.n_bins, angle_offset), params);
  return {block.replicate(params.pulses_per_cpi, 1), bin};
}

CpiReturn synthesize_return(const std::vector<TargetAmplitude>& targets, const Beamformer& bf, const CVec& clutter,
                            int bin, const RadarParams& params) {
  if (clutter.size() != params.n_total()) throw std::invalid_argument("synthesize_return: clutter length != N");
  CpiReturn r;
  r.bin = bin;
  r.x = clutter;
  for (const auto& t : targets) {
    if (t.bin != bin) continue;
    r.x += t.alpha * virtual_steering(bf, bin, params, t.angle_offset).v;
  }
  return r;
}

double amplitude_from_snr(double snr_db, double sigma_c2) { return std::sqrt(sigma_c2 * std::pow(10.0, snr_db / 10.0)); }

}  // namespace crn
