#include "crn/clutter.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>

namespace crn {

namespace {

// Schur-Cohn: all roots of sum_k a[k] z^k strictly inside the unit circle.
bool schur_stable(std::vector<cplx> a) {
  while (a.size() > 1 && std::abs(a.back()) == 0.0) a.pop_back();
  while (a.size() > 1) {
    const std::size_t m = a.size() - 1;
    const cplx lead = a[m];
    const cplx tail = a[0];
    if (!(std::abs(tail) < std::abs(lead))) return false;
    std::vector<cplx> next(m);
    for (std::size_t k = 1; k <= m; ++k) next[k - 1] = std::conj(lead) * a[k] - tail * std::conj(a[m - k]);
    a = std::move(next);
  }
  return true;
}

// 1 - sum_i s_i w^i has no zero with |w| <= 1, checked as z^m - sum s_i z^(m-i).
bool edge_stable(const std::vector<cplx>& s) {
  const std::size_t m = s.size();
  if (m == 0) return true;
  std::vector<cplx> a(m + 1);
  a[m] = 1.0;
  for (std::size_t i = 1; i <= m; ++i) a[m - i] = -s[i - 1];
  return schur_stable(a);
}

}  // namespace

StabilityReport check_stability(const CMat& phi, int grid) {
  StabilityReport rep;
  const int p = static_cast<int>(phi.rows());
  const int q = static_cast<int>(phi.cols());
  if (p == 0 || q == 0) {
    rep.stable = rep.edges_stable = true;
    rep.min_modulus = 1.0;
    return rep;
  }
  std::vector<cplx> e1(static_cast<std::size_t>(grid) * p), e2(static_cast<std::size_t>(grid) * q);
  for (int g = 0; g < grid; ++g) {
    const double w = 2.0 * std::numbers::pi * g / grid;
    for (int i = 0; i < p; ++i) e1[static_cast<std::size_t>(g * p + i)] = std::polar(1.0, -w * (i + 1));
    for (int j = 0; j < q; ++j) e2[static_cast<std::size_t>(g * q + j)] = std::polar(1.0, -w * (j + 1));
  }
  double min_mod = INFINITY;
  std::vector<cplx> rowsum(static_cast<std::size_t>(p));
  for (int g2 = 0; g2 < grid; ++g2) {
    for (int i = 0; i < p; ++i) {
      cplx acc = 0.0;
      for (int j = 0; j < q; ++j) acc += phi(i, j) * e2[static_cast<std::size_t>(g2 * q + j)];
      rowsum[static_cast<std::size_t>(i)] = acc;
    }
    for (int g1 = 0; g1 < grid; ++g1) {
      cplx val = 1.0;
      for (int i = 0; i < p; ++i) val -= rowsum[static_cast<std::size_t>(i)] * e1[static_cast<std::size_t>(g1 * p + i)];
      min_mod = std::min(min_mod, std::abs(val));
    }
  }
  rep.min_modulus = min_mod;
  std::vector<cplx> s1(static_cast<std::size_t>(p)), s2(static_cast<std::size_t>(q));
  for (int i = 0; i < p; ++i) s1[static_cast<std::size_t>(i)] = phi.row(i).sum();
  for (int j = 0; j < q; ++j) s2[static_cast<std::size_t>(j)] = phi.col(j).sum();
  rep.edges_stable = edge_stable(s1) && edge_stable(s2);
  rep.stable = rep.edges_stable && min_mod > 1e-6;
  return rep;
}

Ar2dModel::Ar2dModel(CMat phi, Innovation innovation) : phi_(std::move(phi)), innovation_(innovation) {
  if (innovation_.kind == InnovationKind::complex_t && !(innovation_.nu > 1.0))
    throw std::invalid_argument("complex_t innovations need nu > 1");
  if (!(innovation_.sigma2 > 0.0)) throw std::invalid_argument("innovation sigma2 must be > 0");
  if (!phi_.allFinite()) throw std::invalid_argument("non-finite AR coefficients");
  real_ = (phi_.imag().array() == 0.0).all();
  stability_ = check_stability(phi_);
  if (!stability_.stable) throw UnstableModel("unstable 2-D AR model");
}

CVec ar_coefficients_from_poles(const std::vector<cplx>& poles) {
  // Expand prod (1 - r z^-1) as a polynomial in z^-1.
  std::vector<cplx> poly{1.0};
  for (cplx r : poles) {
    std::vector<cplx> next(poly.size() + 1, 0.0);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k] += poly[k];
      next[k + 1] -= r * poly[k];
    }
    poly = std::move(next);
  }
  CVec a(static_cast<Eigen::Index>(poles.size()));
  for (std::size_t k = 1; k < poly.size(); ++k) a[static_cast<Eigen::Index>(k - 1)] = -poly[k];
  return a;
}

Ar2dModel separable_model(const CVec& phi_spatial, const CVec& phi_temporal, const Innovation& innovation) {
  return Ar2dModel(phi_spatial * phi_temporal.transpose(), innovation);
}

Ar2dModel default_model() {
  const cplx j(0.0, 1.0);
  CVec s = ar_coefficients_from_poles({0.5, -0.4, 0.3 * j, -0.3 * j, 0.2, -0.1});
  CVec t = ar_coefficients_from_poles({0.4, 0.2, -0.1, 0.1 * j, -0.1 * j, 0.05});
  // Conjugate pole pairs give real polynomials; drop rounding residue.
  s = s.real().cast<cplx>();
  t = t.real().cast<cplx>();
  return separable_model(s, t, Innovation{InnovationKind::complex_t, 2.0, 1.0});
}

Ar2dModel white_model(const Innovation& innovation) { return Ar2dModel(CMat(0, 0), innovation); }

Ar2dModel model_from_config(const ClutterConfig& cfg) {
  const Innovation innov{cfg.innovation, cfg.nu, cfg.sigma2};
  switch (cfg.model) {
    case ClutterKind::default_model:
      return Ar2dModel(default_model().phi(), innov);
    case ClutterKind::white:
      return white_model(innov);
    case ClutterKind::separable: {
      CVec s = Eigen::Map<const CVec>(cfg.phi_spatial.data(), static_cast<Eigen::Index>(cfg.phi_spatial.size()));
      CVec t = Eigen::Map<const CVec>(cfg.phi_temporal.data(), static_cast<Eigen::Index>(cfg.phi_temporal.size()));
      return separable_model(s, t, innov);
    }
    case ClutterKind::general: {
      if (static_cast<int>(cfg.phi.size()) != cfg.p * cfg.q) throw std::invalid_argument("phi must hold p*q values");
      CMat phi(cfg.p, cfg.q);
      for (int i = 0; i < cfg.p; ++i)
        for (int k = 0; k < cfg.q; ++k) phi(i, k) = cfg.phi[static_cast<std::size_t>(i * cfg.q + k)];
      return Ar2dModel(phi, innov);
    }
  }
  throw std::invalid_argument("unknown clutter model");
}

InnovationSampler::InnovationSampler(const Innovation& innovation)
    : innovation_(innovation),
      normal_(0.0, std::sqrt(innovation.sigma2 / 2.0)),
      chi2_(innovation.kind == InnovationKind::complex_t ? innovation.nu : 1.0) {
  if (innovation.kind == InnovationKind::complex_t && !(innovation.nu > 1.0))
    throw std::invalid_argument("complex_t innovations need nu > 1");
}

cplx InnovationSampler::operator()(Rng& rng) {
  const double re = normal_(rng);
  const double im = normal_(rng);
  if (innovation_.kind == InnovationKind::complex_gaussian) return {re, im};
  const double texture = std::sqrt(innovation_.nu / chi2_(rng));
  return {re * texture, im * texture};
}

cplx sample_complex_t(double nu, double sigma2, Rng& rng) {
  InnovationSampler s(Innovation{InnovationKind::complex_t, nu, sigma2});
  return s(rng);
}

namespace {

template <typename Coef>
void run_recursion(const Coef* phi, int p, int q, cplx* grid, int rows, int cols, InnovationSampler& draw, Rng& rng) {
  // Row-major sweep; grid storage is column-major (rows x cols).
  for (int n = 0; n < rows; ++n) {
    for (int k = 0; k < cols; ++k) {
      const cplx e = draw(rng);
      double re = e.real(), im = e.imag();
      const int imax = std::min(p, n);
      const int jmax = std::min(q, k);
      for (int j = 1; j <= jmax; ++j) {
        const cplx* col = grid + static_cast<std::ptrdiff_t>(k - j) * rows;
        const Coef* pc = phi + static_cast<std::ptrdiff_t>(j - 1) * p;
        for (int i = 1; i <= imax; ++i) {
          const cplx c = col[n - i];
          if constexpr (std::is_same_v<Coef, double>) {
            re += pc[i - 1] * c.real();
            im += pc[i - 1] * c.imag();
          } else {
            const cplx t = pc[i - 1] * c;
            re += t.real();
            im += t.imag();
          }
        }
      }
      grid[static_cast<std::ptrdiff_t>(k) * rows + n] = {re, im};
    }
  }
}

}  // namespace

ClutterField generate(const Ar2dModel& model, int n_s, int pulses, int burn_in, Rng& rng) {
  if (n_s < 1 || pulses < 1) throw std::invalid_argument("generate: field dimensions must be >= 1");
  const int order = std::max(model.p(), model.q());
  if (burn_in < 10 * order) throw std::invalid_argument("generate: burn_in must be >= 10*max(p,q)");
  const bool memoryless = model.p() == 0 || model.q() == 0;
  const int margin = memoryless ? 0 : burn_in;
  const int rows = n_s + margin;
  const int cols = pulses + margin;
  CMat grid(rows, cols);
  InnovationSampler draw(model.innovation());
  if (model.real_coefficients()) {
    const Eigen::MatrixXd phi = model.phi().real();
    run_recursion<double>(phi.data(), model.p(), model.q(), grid.data(), rows, cols, draw, rng);
  } else {
    run_recursion<cplx>(model.phi().data(), model.p(), model.q(), grid.data(), rows, cols, draw, rng);
  }
  ClutterField f;
  f.c = grid.bottomRightCorner(n_s, pulses);
  f.vectorized = vectorize(f.c);
  f.sigma_c2 = f.vectorized.squaredNorm() / static_cast<double>(f.vectorized.size());
  return f;
}

double nominal_power(const Ar2dModel& model) {
  const double sigma2 = model.innovation().sigma2;
  const int p = model.p(), q = model.q();
  if (p == 0 || q == 0) return sigma2;
  // Impulse response of the recursion on a growing square until its energy settles.
  for (int size = 128;; size *= 2) {
    CMat h = CMat::Zero(size, size);
    double energy = 0.0, edge = 0.0;
    for (int n = 0; n < size; ++n) {
      for (int k = 0; k < size; ++k) {
        cplx v = (n == 0 && k == 0) ? cplx(1.0) : cplx(0.0);
        for (int i = 1; i <= std::min(p, n); ++i)
          for (int j = 1; j <= std::min(q, k); ++j) v += model.phi()(i - 1, j - 1) * h(n - i, k - j);
        h(n, k) = v;
        const double e = std::norm(v);
        energy += e;
        if (n >= size - 4 || k >= size - 4) edge += e;
      }
    }
    if (edge <= 1e-14 * energy || size >= 2048) return sigma2 * energy;
  }
}

CVec vectorize(const CMat& c) { return Eigen::Map<const CVec>(c.data(), c.size()); }

CMat devectorize(const CVec& v, int n_s) {
  if (n_s < 1 || v.size() % n_s != 0) throw std::invalid_argument("devectorize: length not a multiple of n_s");
  return Eigen::Map<const CMat>(v.data(), n_s, v.size() / n_s);
}

std::vector<double> empirical_autocorrelation(const CVec& c_vec, int max_lag) {
  const Eigen::Index n = c_vec.size();
  if (max_lag < 0 || max_lag >= n) throw std::invalid_argument("empirical_autocorrelation: max_lag >= length");
  std::vector<double> rho(static_cast<std::size_t>(max_lag) + 1, 0.0);
  const double r0 = c_vec.squaredNorm();
  if (r0 == 0.0) {
    rho[0] = 1.0;
    return rho;
  }
  for (int r = 0; r <= max_lag; ++r) {
    const cplx acc = c_vec.head(n - r).dot(c_vec.tail(n - r));
    rho[static_cast<std::size_t>(r)] = std::abs(acc) / r0;
  }
  rho[0] = 1.0;
  return rho;
}

DecayReport validate_decay(const CVec& c_vec) {
  const auto n = static_cast<int>(c_vec.size());
  if (n < 512) throw std::invalid_argument("validate_decay: length must be >= 512");
  const int max_lag = std::min(n / 4, 256);
  const std::vector<double> rho = empirical_autocorrelation(c_vec, max_lag);
  const double floor = 4.0 / std::sqrt(static_cast<double>(n));
  // Right-to-left records of the bias-corrected magnitudes above the noise floor.
  std::vector<double> xs{0.0}, ys{0.0};
  double running = 0.0;
  for (int r = max_lag; r >= 1; --r) {
    const double u = rho[static_cast<std::size_t>(r)] * n / static_cast<double>(n - r);
    if (u > running) {
      running = u;
      if (u > floor) {
        xs.push_back(r);
        ys.push_back(std::log(u));
      }
    }
  }
  DecayReport rep;
  rep.points_used = static_cast<int>(xs.size());
  if (xs.size() == 1) {
    rep.gamma_fit = 0.0;
    rep.amplitude_fit = 1.0;
    rep.passes = true;
    return rep;
  }
  const double m = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / m;
  rep.gamma_fit = std::exp(slope);
  rep.amplitude_fit = std::exp(intercept);
  rep.passes = slope < -1e-9;
  return rep;
}

void write_field_binary(std::ostream& out, const CVec& values) {
  static_assert(std::endian::native == std::endian::little, "binary dump assumes a little-endian host");
  const std::uint64_t count = static_cast<std::uint64_t>(values.size());
  out.write(reinterpret_cast<const char*>(&count), sizeof(count));
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const float pair[2] = {static_cast<float>(values[i].real()), static_cast<float>(values[i].imag())};
    out.write(reinterpret_cast<const char*>(pair), sizeof(pair));
  }
}

CVec read_field_binary(std::istream& in) {
  std::uint64_t count = 0;
  if (!in.read(reinterpret_cast<char*>(&count), sizeof(count))) throw std::runtime_error("truncated field dump");
  CVec v(static_cast<Eigen::Index>(count));
  for (std::uint64_t i = 0; i < count; ++i) {
    float pair[2];
    if (!in.read(reinterpret_cast<char*>(pair), sizeof(pair))) throw std::runtime_error("truncated field dump");
    v[static_cast<Eigen::Index>(i)] = {pair[0], pair[1]};
  }
  return v;
}

}  // namespace crn
