#include <algorithm>
#include <cmath>

#include "crn/array_signal.hpp"
#include "crn/clutter.hpp"
#include "crn/detector.hpp"
#include "crn/rng.hpp"
#include "doctest.h"

using namespace crn;

namespace {

CVec random_cvec(Rng& rng, int n) {
  std::normal_distribution<double> g;
  CVec v(n);
  for (int i = 0; i < n; ++i) v[i] = {g(rng), g(rng)};
  return v;
}

// Gamma entries written straight from the three-case banding rule.
CMat dense_banded(const CVec& c, int lag) {
  const auto n = c.size();
  CMat g = CMat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j - i >= 0 && j - i <= lag) g(i, j) = c[i] * std::conj(c[j]);
      else if (i - j > 0 && i - j <= lag) g(i, j) = std::conj(c[j] * std::conj(c[i]));
    }
  return g;
}

double dense_wald(const CVec& x, const CVec& v, int lag) {
  const cplx alpha = v.dot(x) / v.squaredNorm();
  const CVec c = x - alpha * v;
  const double q = (v.adjoint() * dense_banded(c, lag) * v)(0).real();
  return 2.0 * std::norm(v.dot(x)) / q;
}

double ks_chi2_2(std::vector<double> s) {
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = -std::expm1(-0.5 * s[i]);
    d = std::max({d, std::abs(f - static_cast<double>(i) / n), std::abs(f - static_cast<double>(i + 1) / n)});
  }
  return d;
}

}  // namespace

TEST_CASE("amplitude estimate examples") {
  Rng rng = make_stream(Stream::test, {30});
  const CVec v = random_cvec(rng, 40);
  CHECK(std::abs(estimate_alpha(2.0 * v, v) - cplx(2.0)) < 1e-14);

  CVec e = random_cvec(rng, 40);
  e -= (v.dot(e) / v.squaredNorm()) * v;  // e orthogonal to v
  CHECK(std::abs(estimate_alpha(e, v)) < 1e-14);
  CHECK(std::abs(estimate_alpha(cplx(1.0, 1.0) * v + e, v) - cplx(1.0, 1.0)) < 1e-14);
  CHECK_THROWS(estimate_alpha(v, CVec::Zero(40)));
}

TEST_CASE("property: amplitude estimate is exact on noise-free inputs") {
  Rng rng = make_stream(Stream::test, {31});
  std::normal_distribution<double> g(0.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const CVec v = random_cvec(rng, 1 + i % 50);
    const cplx a(g(rng), g(rng));
    CHECK(std::abs(estimate_alpha(a * v, v) - a) <= 1e-12 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("banded covariance examples") {
  Rng rng = make_stream(Stream::test, {32});
  const CVec c = random_cvec(rng, 6);
  const CMat d0 = banded_covariance(c, 0).dense();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(std::abs(d0(i, j) - (i == j ? cplx(std::norm(c[i])) : cplx(0.0))) < 1e-15);

  CVec e1 = CVec::Zero(5);
  e1[0] = 1.0;
  CHECK((banded_covariance(e1, 4).dense() - e1 * e1.adjoint()).norm() < 1e-15);

  CVec c2(2);
  c2 << cplx(1.0, 0.0), cplx(0.0, 1.0);
  CMat expect(2, 2);
  expect << cplx(1, 0), cplx(0, -1), cplx(0, 1), cplx(1, 0);
  CHECK((banded_covariance(c2, 1).dense() - expect).norm() < 1e-15);

  CHECK_THROWS(banded_covariance(c2, 2));
}

TEST_CASE("property: banded covariance is Hermitian and zero beyond the band") {
  Rng rng = make_stream(Stream::test, {33});
  for (int t = 0; t < 30; ++t) {
    const int n = 2 + t % 20;
    const int lag = t % n;
    const BandedCovariance g = banded_covariance(random_cvec(rng, n), lag);
    const CMat d = g.dense();
    CHECK((d - d.adjoint()).norm() == 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (std::abs(i - j) > lag) CHECK(d(i, j) == cplx(0.0));
  }
}

TEST_CASE("oracle: band quadratic form and statistic match dense evaluation") {
  Rng rng = make_stream(Stream::test, {34});
  for (int t = 0; t < 200; ++t) {
    const int n = std::uniform_int_distribution<int>(2, 64)(rng);
    const int lag = std::uniform_int_distribution<int>(0, n - 1)(rng);
    const CVec c = random_cvec(rng, n), v = random_cvec(rng, n);
    const double banded = quadratic_form(banded_covariance(c, lag), v);
    const double dense = (v.adjoint() * dense_banded(c, lag) * v)(0).real();
    CHECK(std::abs(banded - dense) <= 1e-12 * std::abs(dense));

  }
}

TEST_CASE("oracle: statistic matches dense evaluation at the operating lags") {
  // The residual is orthogonal to v, so near the full band v^H G v cancels to
  // zero and no evaluation order is accurate; the comparison is made at the
  // lags the detector actually uses.
  Rng rng = make_stream(Stream::test, {43});
  std::uniform_real_distribution<double> kappa(0.05, 0.95);
  int floored = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = std::uniform_int_distribution<int>(16, 64)(rng);
    const double cap = t % 2 ? 0.5 : 0.2;
    const double k = kappa(rng);
    const int lag = truncation_lag(n, k, cap);
    const CVec v = random_cvec(rng, n);
    const CVec x = cplx(0.3, 0.1) * v + random_cvec(rng, n);
    const WaldResult w = wald_statistic_at_lag(x, v, lag);
    CHECK(wald_statistic(x, v, k, cap) == w.lambda);
    // The banded estimate is not positive definite; a negative form is floored.
    if (w.floored) {
      ++floored;
      continue;
    }
    const double ref = dense_wald(x, v, lag);
    CHECK(std::abs(w.lambda - ref) <= 1e-12 * std::abs(ref));
  }
  CHECK(floored < 20);
}

TEST_CASE("truncation lag") {
  CHECK(truncation_lag(512, 0.8, 0.2) == 4);
  CHECK(truncation_lag(512, 0.8, 0.5) == 23);
  CHECK(truncation_lag(512, 0.8, 1.0) == 148);
  CHECK(truncation_lag(10000, 0.8, 0.5) == 100);
  CHECK(truncation_lag(10000, 0.8, 1.0) == 1585);
  CHECK(truncation_lag(2, 0.9, 1.0) == 1);
  CHECK(truncation_lag(16, 0.5, 1.0) == 4);
}

TEST_CASE("statistic examples") {
  Rng rng = make_stream(Stream::test, {35});
  const CVec v = random_cvec(rng, 128);
  CVec x = random_cvec(rng, 128);
  x -= (v.dot(x) / v.squaredNorm()) * v;
  CHECK(wald_statistic(x, v, 0.8) < 1e-20);
  CHECK_THROWS(wald_statistic(x, CVec::Zero(128), 0.8));
  CHECK_THROWS(wald_statistic(x.head(10), v, 0.8));
}

TEST_CASE("property: statistic is invariant to positive rescaling") {
  Rng rng = make_stream(Stream::test, {36});
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  for (int i = 0; i < 100; ++i) {
    const CVec v = random_cvec(rng, 64);
    const CVec x = 0.2 * v + random_cvec(rng, 64);
    const double t = scale(rng);
    for (double cap : {0.2, 0.5}) {
      const double a = wald_statistic(x, v, 0.8, cap);
      const double b = wald_statistic(t * x, v, 0.8, cap);
      CHECK(std::abs(a - b) <= 1e-10 * a);
    }
  }
}

TEST_CASE("degenerate residual is handled by the floor") {
  CVec v = CVec::Ones(8);
  // x = alpha v exactly: residual and quadratic form vanish.
  const WaldResult r = wald_statistic_at_lag(cplx(2.0, 0.0) * v, v, 2);
  CHECK(r.floored);
  CHECK(std::isinf(r.lambda));
  const WaldResult z = wald_statistic_at_lag(CVec::Zero(8), v, 2);
  CHECK(z.floored);
  CHECK(z.lambda == 0.0);
  FloorTally t;
  for (int i = 0; i < 999; ++i) t.add({1.0, false});
  t.add(r);
  CHECK_FALSE(t.excessive());
  t.add(z);
  CHECK(t.excessive());
}

TEST_CASE("thresholds") {
  CHECK(cfar_threshold(1e-4) == doctest::Approx(18.420681).epsilon(1e-7));
  CHECK(cfar_threshold(std::exp(-0.5)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(cfar_threshold(1e-2) == doctest::Approx(9.210340).epsilon(1e-7));
  CHECK_THROWS(cfar_threshold(0.0));
  CHECK_THROWS(cfar_threshold(1.0));
}

TEST_CASE("detection probability estimates") {
  for (double thr : {1.0, 9.21034, 18.420681}) CHECK(estimate_pd(0.0, thr) == doctest::Approx(std::exp(-thr / 2)).epsilon(1e-12));
  for (double lam : {0.0, 3.0, 50.0}) CHECK(estimate_pd(lam, 0.0) == 1.0);
  CHECK(estimate_pd(18.4207, 18.4207) == doctest::Approx(0.547).epsilon(0.01));
  CHECK(std::abs(estimate_pd(18.4207, 18.4207) - 0.5) <= 0.05);
  CHECK(estimate_pd(INFINITY, 18.0) == 1.0);
}

TEST_CASE("H0 white Gaussian statistics follow chi-squared(2)") {
  RadarParams p;
  const Beamformer bf = make_beamformer({}, p);
  const CVec v = virtual_steering(bf, 7, p).v;
  const int lag = truncation_lag(p.n_total(), p.kappa, p.kappa_cap);
  std::vector<double> s;
  for (int i = 0; i < 20000; ++i) {
    Rng rng = make_stream(Stream::test, {37, static_cast<std::uint64_t>(i)});
    s.push_back(wald_statistic_at_lag(random_cvec(rng, p.n_total()), v, lag).lambda);
  }
  CHECK(ks_chi2_2(s) <= 0.05);
}

TEST_CASE("H0 statistics stay chi-squared(2) with the wider band") {
  // kappa_cap = 0.5 needs a longer CPI: at N = 512 (lag 23) the KS distance is
  // about 0.06, at N = 2048 (lag 46) it is back under 0.03.
  RadarParams p;
  p.kappa_cap = 0.5;
  p.pulses_per_cpi = 128;
  const CVec v = virtual_steering(make_beamformer({}, p), 3, p).v;
  const int lag = truncation_lag(p.n_total(), p.kappa, p.kappa_cap);
  CHECK(lag == 46);
  std::vector<double> s;
  for (int i = 0; i < 3000; ++i) {
    Rng rng = make_stream(Stream::test, {38, static_cast<std::uint64_t>(i)});
    s.push_back(wald_statistic_at_lag(random_cvec(rng, p.n_total()), v, lag).lambda);
  }
  CHECK(ks_chi2_2(s) <= 0.05);
}

TEST_CASE("detect_cpi output shape and decision rule") {
  RadarParams p;
  p.n_tx = 2;
  p.n_rx = 2;
  p.pulses_per_cpi = 16;
  const Beamformer bf = make_beamformer({}, p);
  std::vector<VirtualSteering> st;
  std::vector<CpiReturn> rt;
  Rng rng = make_stream(Stream::test, {39});
  for (int l = 0; l < p.n_bins; ++l) {
    st.push_back(virtual_steering(bf, l, p));
    rt.push_back(synthesize_return({}, bf, random_cvec(rng, p.n_total()), l, p));
  }
  const StatisticVector s = detect_cpi(rt, st, p);
  CHECK(s.lambda.size() == 20);
  CHECK(s.decisions.size() == 20);
  CHECK(s.pd_estimates.size() == 20);
  CHECK(s.threshold == doctest::Approx(cfar_threshold(p.pfa_nominal)));
  for (std::size_t l = 0; l < 20; ++l) {
    CHECK(s.lambda[l] >= 0.0);
    CHECK(s.decisions[l] == (s.lambda[l] >= s.threshold));
    CHECK(s.pd_estimates[l] >= 0.0);
    CHECK(s.pd_estimates[l] <= 1.0);
  }
  rt.pop_back();
  CHECK_THROWS(detect_cpi(rt, st, p));
}

TEST_CASE("detect_cpi at pfa 0.5 declares about half the bins") {
  RadarParams p;
  p.n_tx = 2;
  p.n_rx = 2;
  p.pulses_per_cpi = 32;
  p.pfa_nominal = 0.5;
  const Beamformer bf = make_beamformer({}, p);
  std::vector<VirtualSteering> st;
  for (int l = 0; l < p.n_bins; ++l) st.push_back(virtual_steering(bf, l, p));
  const int trials = 500;
  long count = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = make_stream(Stream::test, {40, static_cast<std::uint64_t>(t)});
    std::vector<CpiReturn> rt;
    for (int l = 0; l < p.n_bins; ++l) rt.push_back(synthesize_return({}, bf, random_cvec(rng, p.n_total()), l, p));
    const StatisticVector s = detect_cpi(rt, st, p);
    count += std::count(s.decisions.begin(), s.decisions.end(), true);
  }
  const double n = trials * 20.0;
  // Four binomial standard deviations around n/2, widened by 2% for the
  // finite-N departure from chi-squared.
  CHECK(std::abs(count - n / 2) < 4.0 * std::sqrt(n / 4) + 0.02 * n);
}

TEST_CASE("a strong target is declared in its bin") {
  RadarParams p;
  const Beamformer bf = make_beamformer({}, p);
  std::vector<VirtualSteering> st;
  std::vector<CpiReturn> rt;
  Rng rng = make_stream(Stream::test, {41});
  for (int l = 0; l < p.n_bins; ++l) {
    st.push_back(virtual_steering(bf, l, p));
    const CVec c = generate(default_model(), p.n_channels(), p.pulses_per_cpi, 60, rng).vectorized;
    std::vector<TargetAmplitude> tg;
    if (l == 9) tg.push_back({9, std::polar(amplitude_from_snr(5.0, 1.0), 0.3), 0.0});
    rt.push_back(synthesize_return(tg, bf, c, l, p));
  }
  const StatisticVector s = detect_cpi(rt, st, p);
  CHECK(s.decisions[9]);
  CHECK(s.lambda[9] > 3 * s.threshold);
  CHECK(s.pd_estimates[9] > 0.999);
}

TEST_CASE("non-illuminated bins with zero steering report zero") {
  RadarParams p;
  p.n_tx = 2;
  p.n_rx = 2;
  p.pulses_per_cpi = 8;
  p.n_bins = 2;
  Beamformer bf;
  bf.weights = CMat::Zero(2, 2);
  std::vector<VirtualSteering> st{virtual_steering(bf, 0, p), virtual_steering(bf, 1, p)};
  Rng rng = make_stream(Stream::test, {42});
  std::vector<CpiReturn> rt{synthesize_return({}, bf, random_cvec(rng, 32), 0, p),
                            synthesize_return({}, bf, random_cvec(rng, 32), 1, p)};
  const StatisticVector s = detect_cpi(rt, st, p);
  CHECK(s.lambda[0] == 0.0);
  CHECK(s.lambda[1] == 0.0);
}
