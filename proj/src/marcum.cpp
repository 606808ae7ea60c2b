#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "crn/detector.hpp"

namespace crn {

double bessel_i0_scaled(double x) {
  if (x < 0) x = -x;
  if (x < 700.0) return std::cyl_bessel_i(0.0, x) * std::exp(-x);
  // Large-argument expansion; terms shrink until k ~ 8x.
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= (2.0 * k - 1) * (2.0 * k - 1) / (k * 8.0 * x);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

namespace {

// I_k(x)/I_0(x) for k = 0..kmax by Miller's backward recurrence.
std::vector<double> bessel_ratios(double x, int kmax) {
  const int start = kmax + 30 + static_cast<int>(std::ceil(10.0 * std::sqrt(x + 1.0)));
  std::vector<double> f(static_cast<std::size_t>(start) + 2, 0.0);
  f[static_cast<std::size_t>(start) + 1] = 0.0;
  f[static_cast<std::size_t>(start)] = 1.0;
  for (int k = start; k >= 1; --k) {
    const auto ku = static_cast<std::size_t>(k);
    f[ku - 1] = f[ku + 1] + (2.0 * k / x) * f[ku];
    if (f[ku - 1] > 1e250) {
      for (std::size_t i = ku - 1; i < f.size(); ++i) f[i] *= 1e-250;
    }
  }
  const double f0 = f[0];
  std::vector<double> r(static_cast<std::size_t>(kmax) + 1);
  for (int k = 0; k <= kmax; ++k) r[static_cast<std::size_t>(k)] = f[static_cast<std::size_t>(k)] / f0;
  return r;
}

// Q1(a, b) for 0 < a <= b: exp(-(a^2+b^2)/2) sum_k (a/b)^k I_k(ab).
double q1_series(double a, double b) {
  const double pref = std::exp(-0.5 * (a - b) * (a - b));
  if (pref == 0.0) return 0.0;
  const double x = a * b;
  const double ratio = a / b;
  const double s0 = bessel_i0_scaled(x);
  int kmax = 32 + static_cast<int>(std::ceil(std::sqrt(80.0 * x)));
  for (;;) {
    const std::vector<double> r = bessel_ratios(x, kmax);
    double sum = 0.0, rk = 1.0;
    for (int k = 0; k <= kmax; ++k) {
      const double term = rk * r[static_cast<std::size_t>(k)];
      sum += term;
      if (k > 0 && term < 1e-15 * sum) return pref * s0 * sum;
      rk *= ratio;
    }
    kmax *= 2;
  }
}

}  // namespace

double marcum_q1(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw std::domain_error("marcum_q1: non-finite input");
  if (a < 0 || b < 0) throw std::domain_error("marcum_q1: negative input");
  if (b == 0.0) return 1.0;
  if (a == 0.0) return std::exp(-0.5 * b * b);
  double q;
  if (a <= b) {
    q = q1_series(a, b);
  } else {
    // Q1(a,b) + Q1(b,a) = 1 + exp(-(a^2+b^2)/2) I_0(ab)
    const double cross = std::exp(-0.5 * (a - b) * (a - b)) * bessel_i0_scaled(a * b);
    q = 1.0 + cross - q1_series(b, a);
  }
  return std::min(1.0, std::max(0.0, q));
}

}  // namespace crn
