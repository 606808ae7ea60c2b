#include <cmath>
#include <numbers>

#include "crn/array_signal.hpp"
#include "crn/rng.hpp"
#include "doctest.h"

using namespace crn;

namespace {

constexpr double kPi = std::numbers::pi;

RadarParams small_params(int n_tx = 4, int n_rx = 3, int k = 5, int bins = 20) {
  RadarParams p;
  p.n_tx = n_tx;
  p.n_rx = n_rx;
  p.pulses_per_cpi = k;
  p.n_bins = bins;
  return p;
}

double trace_wwh(const CMat& w) { return (w * w.adjoint()).trace().real(); }

// Direct block-diagonal construction: W~ = blkdiag(W,...,W), a~ = stack of a,
// then (W~^T a~) kron b evaluated pulse by pulse from the definition.
CVec blockdiag_steering(const CMat& w, double angle, const RadarParams& p) {
  const int nt = p.n_tx, mr = p.n_rx, k = p.pulses_per_cpi;
  CMat wt = CMat::Zero(nt * k, nt * k);
  CVec at(nt * k);
  const CVec a = steering(angle, nt);
  for (int b = 0; b < k; ++b) {
    wt.block(b * nt, b * nt, nt, nt) = w;
    at.segment(b * nt, nt) = a;
  }
  const CVec wa = wt.transpose() * at;
  const CVec rx = steering(angle, mr);
  CVec out(nt * mr * k);
  for (int blk = 0; blk < k; ++blk)
    for (int t = 0; t < nt; ++t)
      for (int r = 0; r < mr; ++r) out[blk * nt * mr + t * mr + r] = wa[blk * nt + t] * rx[r];
  return out;
}

}  // namespace

TEST_CASE("steering vector examples") {
  const CVec a0 = steering(0.0, 10);
  for (int m = 0; m < 10; ++m) CHECK(std::abs(a0[m] - cplx(1.0)) < 1e-15);

  const CVec a90 = steering(kPi / 2, 2);
  CHECK(std::abs(a90[0] - cplx(1.0)) < 1e-15);
  CHECK(std::abs(a90[1] - cplx(-1.0)) < 1e-15);

  const CVec a30 = steering(kPi / 6, 4);
  for (int m = 0; m < 4; ++m) CHECK(std::abs(a30[m] - std::polar(1.0, m * kPi / 2)) < 1e-12);
}

TEST_CASE("steering entries are unit phasors with entry 0 equal to 1") {
  Rng rng = make_stream(Stream::test, {7});
  std::uniform_real_distribution<double> u(-kPi / 2, kPi / 2);
  for (int i = 0; i < 50; ++i) {
    const CVec a = steering(u(rng), 13);
    CHECK(a[0] == cplx(1.0));
    for (int m = 0; m < 13; ++m) CHECK(std::abs(a[m]) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("bin centres") {
  const auto c20 = bin_centers(20);
  REQUIRE(c20.size() == 20);
  CHECK(c20[0] == doctest::Approx(-kPi / 2 + kPi / 40));
  for (std::size_t l = 1; l < 20; ++l) CHECK(c20[l] - c20[l - 1] == doctest::Approx(kPi / 20));
  CHECK(bin_centers(1)[0] == doctest::Approx(0.0));
  const auto c2 = bin_centers(2);
  CHECK(c2[0] == doctest::Approx(-kPi / 4));
  CHECK(c2[1] == doctest::Approx(kPi / 4));
  CHECK(bin_angle(3, 20, 0.0) == doctest::Approx(c20[3]));
  CHECK(bin_angle(3, 20, 0.5) == doctest::Approx(c20[3] + kPi / 40));
}

TEST_CASE("orthogonal beamformer") {
  RadarParams p = small_params(10, 10, 2);
  const Beamformer bf = make_beamformer({}, p);
  CHECK(bf.illuminated_bins.empty());
  CHECK((bf.weights - std::sqrt(0.1) * CMat::Identity(10, 10)).norm() < 1e-15);
  CHECK(trace_wwh(bf.weights) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("single-bin beamformer puts P*N_T gain on the bin") {
  RadarParams p = small_params(6, 2, 3);
  p.total_power = 2.5;
  for (int l : {0, 7, 19}) {
    const Beamformer bf = make_beamformer({l}, p);
    const CVec a = steering(bin_angle(l, p.n_bins), p.n_tx);
    const cplx g = (a.transpose() * bf.weights.col(0))(0);
    CHECK(std::norm(g) == doctest::Approx(p.total_power * p.n_tx).epsilon(1e-12));
    CHECK(trace_wwh(bf.weights) == doctest::Approx(p.total_power).epsilon(1e-9));
    for (int c = 1; c < p.n_tx; ++c) CHECK(bf.weights.col(c).norm() == 0.0);
  }
}

TEST_CASE("two-bin beamformer halves the per-bin gain") {
  RadarParams p = small_params(8, 2, 3);
  const Beamformer one = make_beamformer({4}, p);
  const Beamformer two = make_beamformer({4, 15}, p);
  const CVec a = steering(bin_angle(4, p.n_bins), p.n_tx);
  const double g1 = std::norm((a.transpose() * one.weights.col(0))(0));
  const double g2 = std::norm((a.transpose() * two.weights.col(0))(0));
  CHECK(g2 / g1 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(trace_wwh(two.weights) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("beamformer rejects more bins than transmitters") {
  RadarParams p = small_params(2, 2, 2);
  CHECK_THROWS(make_beamformer({0, 1, 2}, p));
  CHECK_NOTHROW(make_beamformer({0, 1}, p));
}

TEST_CASE("property: trace constraint holds for random bin sets") {
  Rng rng = make_stream(Stream::test, {8});
  for (int i = 0; i < 200; ++i) {
    RadarParams p = small_params(std::uniform_int_distribution<int>(1, 10)(rng), 2, 2);
    p.total_power = std::uniform_real_distribution<double>(0.1, 10.0)(rng);
    const int b = std::uniform_int_distribution<int>(0, p.n_tx)(rng);
    std::vector<int> bins;
    while (static_cast<int>(bins.size()) < b) {
      const int l = std::uniform_int_distribution<int>(0, p.n_bins - 1)(rng);
      if (std::find(bins.begin(), bins.end(), l) == bins.end()) bins.push_back(l);
    }
    const Beamformer bf = make_beamformer(bins, p);
    CHECK(std::abs(trace_wwh(bf.weights) - p.total_power) <= 1e-9 * p.total_power);
  }
}

TEST_CASE("virtual steering of a scalar array") {
  RadarParams p = small_params(1, 1, 3, 5);
  Beamformer bf;
  bf.weights = CMat::Constant(1, 1, cplx(0.3, -0.4));
  const VirtualSteering v = virtual_steering(bf, 2, p);
  REQUIRE(v.v.size() == 3);
  const double phi = bin_angle(2, 5);
  const cplx expect = cplx(0.3, -0.4) * steering(phi, 1)[0] * steering(phi, 1)[0];
  for (int k = 0; k < 3; ++k) CHECK(std::abs(v.v[k] - expect) < 1e-15);
}

TEST_CASE("full-size virtual steering has N = 10000 entries") {
  RadarParams p = small_params(10, 10, 100, 20);
  CHECK(virtual_steering(make_beamformer({}, p), 5, p).v.size() == 10000);
}

TEST_CASE("virtual steering equals the block-diagonal construction exactly") {
  Rng rng = make_stream(Stream::test, {9});
  for (int i = 0; i < 20; ++i) {
    RadarParams p = small_params(std::uniform_int_distribution<int>(1, 5)(rng),
                                 std::uniform_int_distribution<int>(1, 4)(rng),
                                 std::uniform_int_distribution<int>(1, 6)(rng), 12);
    const int l = std::uniform_int_distribution<int>(0, 11)(rng);
    const Beamformer bf = make_beamformer(i % 2 ? std::vector<int>{l} : std::vector<int>{}, p);
    const VirtualSteering v = virtual_steering(bf, l, p);
    const CVec ref = blockdiag_steering(bf.weights, bin_angle(l, 12), p);
    CHECK((v.v - ref).cwiseAbs().maxCoeff() < 1e-14);
    // Every pulse block repeats the first one bit for bit.
    const int blk = p.n_channels();
    for (int k = 1; k < p.pulses_per_cpi; ++k) CHECK(v.v.segment(k * blk, blk) == v.v.head(blk));
    CHECK(v.v.head(blk) == pulse_steering(bf, bin_angle(l, 12), p));
  }
}

TEST_CASE("orthogonal beam gives the same norm in every bin") {
  RadarParams p = small_params(5, 3, 4);
  const Beamformer bf = make_beamformer({}, p);
  const double n0 = virtual_steering(bf, 0, p).v.squaredNorm();
  for (int l = 1; l < p.n_bins; ++l) CHECK(virtual_steering(bf, l, p).v.squaredNorm() == doctest::Approx(n0).epsilon(1e-12));
}

TEST_CASE("focusing on a bin multiplies its steering energy by N_T") {
  for (int nt : {1, 2, 4, 10}) {
    RadarParams p = small_params(nt, 3, 4);
    for (int l : {2, 11}) {
      const double focused = virtual_steering(make_beamformer({l}, p), l, p).v.squaredNorm();
      const double flood = virtual_steering(make_beamformer({}, p), l, p).v.squaredNorm();
      CHECK(std::abs(focused / flood - nt) <= 1e-9 * nt);
    }
  }
}

TEST_CASE("synthesized returns") {
  RadarParams p = small_params(3, 2, 4);
  Rng rng = make_stream(Stream::test, {10});
  std::normal_distribution<double> g;
  CVec clutter(p.n_total());
  for (int i = 0; i < clutter.size(); ++i) clutter[i] = {g(rng), g(rng)};
  const Beamformer bf = make_beamformer({6}, p);

  const CpiReturn h0 = synthesize_return({}, bf, clutter, 6, p);
  CHECK(h0.x == clutter);
  CHECK(h0.bin == 6);

  const cplx alpha(0.7, -0.2);
  const CpiReturn h1 = synthesize_return({{6, alpha, 0.0}}, bf, CVec::Zero(p.n_total()), 6, p);
  CHECK((h1.x - alpha * virtual_steering(bf, 6, p).v).norm() < 1e-15);

  // A target in another bin leaves this bin untouched.
  CHECK(synthesize_return({{7, alpha, 0.0}}, bf, clutter, 6, p).x == clutter);
  CHECK_THROWS(synthesize_return({}, bf, CVec::Zero(3), 6, p));
}

TEST_CASE("amplitude from SNR") {
  CHECK(amplitude_from_snr(-18.0, 1.0) == doctest::Approx(std::pow(10.0, -18.0 / 20.0)));
  CHECK(amplitude_from_snr(0.0, 4.0) == doctest::Approx(2.0));
  CHECK(std::norm(amplitude_from_snr(-7.0, 2.0)) / 2.0 == doctest::Approx(std::pow(10.0, -0.7)));
}
