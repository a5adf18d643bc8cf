#include "absorb/grid_features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace absorb {

namespace {

// Least-squares parabola over samples in [lo, hi]; returns vertex (t, value).
// Falls back to the grid argmax when the window is degenerate.
std::pair<double, double> parabola_vertex(const std::vector<double>& t,
                                          const std::vector<double>& d,
                                          double lo, double hi) {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0, y0 = 0, y1 = 0, y2 = 0;
  double tref = 0.5 * (lo + hi);
  int count = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < lo || t[i] > hi) continue;
    const double u = t[i] - tref;
    const double u2 = u * u;
    s0 += 1; s1 += u; s2 += u2; s3 += u2 * u; s4 += u2 * u2;
    y0 += d[i]; y1 += u * d[i]; y2 += u2 * d[i];
    ++count;
  }
  if (count < 5) return {0.0, 0.0};
  // Solve the 3x3 normal equations for d ~ a + b u + c u^2.
  const double m[3][3] = {{s0, s1, s2}, {s1, s2, s3}, {s2, s3, s4}};
  const double rhs[3] = {y0, y1, y2};
  double aug[3][4];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) aug[i][j] = m[i][j];
    aug[i][3] = rhs[i];
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::fabs(aug[r][col]) > std::fabs(aug[piv][col])) piv = r;
    }
    std::swap(aug[col], aug[piv]);
    if (aug[col][col] == 0.0) return {0.0, 0.0};
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = aug[r][col] / aug[col][col];
      for (int j = col; j < 4; ++j) aug[r][j] -= f * aug[col][j];
    }
  }
  const double b = aug[1][3] / aug[1][1];
  const double c = aug[2][3] / aug[2][2];
  if (!(c < 0.0)) return {0.0, 0.0};
  const double u_star = -b / (2.0 * c);
  const double a = aug[0][3] / aug[0][0];
  return {tref + u_star, a + b * u_star + c * u_star * u_star};
}

}  // namespace

GridPeak grid_tau_T(const std::vector<double>& t,
                    const std::vector<double>& density, double t_min,
                    double window_frac) {
  if (t.size() != density.size() || t.size() < 8) {
    throw std::invalid_argument("grid_tau_T: bad sample arrays");
  }
  std::size_t best = 0;
  double bv = -1.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_min) continue;
    if (density[i] > bv) {
      bv = density[i];
      best = i;
    }
  }
  if (bv < 0.0) throw std::invalid_argument("grid_tau_T: no samples past t_min");

  GridPeak peak;
  double center = t[best];
  for (int pass = 0; pass < 2; ++pass) {
    const double lo = std::max(t_min, center * (1.0 - window_frac));
    const double hi = std::min(t.back(), center * (1.0 + window_frac));
    auto [vt, vd] = parabola_vertex(t, density, lo, hi);
    if (vd <= 0.0 || vt < lo || vt > hi) {
      // degenerate fit: keep the argmax
      peak.tau_T = t[best];
      peak.peak_density = density[best];
      peak.window_lo = lo;
      peak.window_hi = hi;
      return peak;
    }
    peak.tau_T = vt;
    peak.peak_density = vd;
    peak.window_lo = lo;
    peak.window_hi = hi;
    center = vt;
  }
  return peak;
}

PlateauFit fit_plateau(const std::vector<double>& x,
                       const std::vector<double>& tau) {
  if (x.size() != tau.size() || x.size() < 2) {
    throw std::invalid_argument("fit_plateau: need >= 2 probes");
  }
  double s0 = 0, su = 0, suu = 0, sy = 0, suy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = x[i] * x[i];
    const double u = 1.0 / x[i];
    s0 += w;
    su += w * u;
    suu += w * u * u;
    sy += w * tau[i];
    suy += w * u * tau[i];
  }
  const double det = s0 * suu - su * su;
  PlateauFit f;
  f.plateau = (suu * sy - su * suy) / det;
  f.slope = (s0 * suy - su * sy) / det;
  return f;
}

GridConfig shutter_probe_config(double v1, double k0, double x_probe) {
  if (!(v1 > 0.0) || !(k0 > 0.0) || !(x_probe > 0.0)) {
    throw std::invalid_argument("shutter_probe_config: need v1, k0, x > 0");
  }
  const double plateau = 1.0 / (2.0 * v1);
  const double guess = plateau * (1.0 + 2.0 * k0 / (x_probe * v1));

  GridConfig g;
  // Wavenumbers contributing over the fit window reach x/(2 t) at its low
  // edge (~0.7 of the peak time).
  const double k_need = std::max(x_probe / (1.44 * guess), 5.0 * k0);
  g.band_limit_k1 = k_need;
  g.band_limit_k2 = k_need + std::max(3.0, 0.2 * k_need);
  g.dx = 0.2 / g.band_limit_k2;
  g.dt = 0.2 / (g.band_limit_k2 * g.band_limit_k2);
  g.layer_width = 40.0;
  g.layer_strength = 10.0;
  g.ramp_width = 10.0;
  g.x_min = -(0.2 * x_probe + g.layer_width + 15.0);
  g.x_max = x_probe + g.layer_width + 20.0;
  g.t_max = 1.35 * guess;
  g.probes = {x_probe};
  long nsteps = std::lround(g.t_max / g.dt);
  g.probe_stride = static_cast<int>(std::max(1L, nsteps / 4000));
  // Whole number of sample intervals so a refined run lands on the same
  // probe times.
  nsteps = ((nsteps + g.probe_stride - 1) / g.probe_stride) * g.probe_stride;
  g.t_max = nsteps * g.dt;
  g.n_snapshots = 2;
  return g;
}

ProbeTau measure_shutter_tau(double v1, double k0, double x_probe,
                             bool richardson) {
  const MediumParams m{1.0, v1};
  ProbeTau out;
  out.x = x_probe;
  out.config = shutter_probe_config(v1, k0, x_probe);
  const GridRun run = shutter_evolve(m, k0, out.config);
  out.audit = run.audit;
  std::vector<double> density = run.probe_density(0);
  if (richardson) {
    GridConfig gh = out.config;
    gh.dx *= 0.5;
    gh.dt *= 0.5;
    gh.probe_stride *= 2;  // same sample times as the coarse run
    const GridRun fine = shutter_evolve(m, k0, gh);
    const std::vector<double> dh = fine.probe_density(0);
    if (dh.size() != density.size()) {
      throw std::runtime_error("measure_shutter_tau: sample grids diverged");
    }
    for (std::size_t i = 0; i < density.size(); ++i) {
      density[i] = (4.0 * dh[i] - density[i]) / 3.0;
    }
  }
  const double t_min = x_probe / (2.0 * 0.9 * out.config.band_limit_k1);
  out.tau = grid_tau_T(run.probe_t, density, t_min).tau_T;
  return out;
}

ShutterCrossValidation cross_validate_shutter(double v1, double k0,
                                              const std::vector<double>& probes,
                                              bool richardson) {
  ShutterCrossValidation cv;
  cv.v1 = v1;
  cv.probes = probes;
  cv.plateau_expected = 1.0 / (2.0 * v1);
  for (double x : probes) {
    cv.tau.push_back(measure_shutter_tau(v1, k0, x, richardson).tau);
  }
  cv.fit = fit_plateau(cv.probes, cv.tau);
  cv.rel_err =
      std::fabs(cv.fit.plateau - cv.plateau_expected) / cv.plateau_expected;
  return cv;
}

ScaledCrossValidation cross_validate_shutter_scaled(
    double v1, double k0, const std::vector<double>& probes,
    const ShutterCrossValidation& anchor) {
  if (!(v1 > 0.0) || !(anchor.v1 > 0.0)) {
    throw std::invalid_argument(
        "cross_validate_shutter_scaled: need absorbing media");
  }
  ScaledCrossValidation cv;
  cv.v1 = v1;
  cv.probes = probes;
  cv.plateau_expected = 1.0 / (2.0 * v1);
  double rsum = 0.0, wsum = 0.0;
  for (double x : probes) {
    // Large target probes are expensive; the matched anchor runs are cheap
    // and share the discretization bias, which cancels in the ratio.
    const double tau_t = measure_shutter_tau(v1, k0, x, false).tau;
    const double x_matched = x * v1 / anchor.v1;
    const double tau_a = measure_shutter_tau(anchor.v1, k0, x_matched, false).tau;
    cv.tau.push_back(tau_t);
    cv.tau_matched.push_back(tau_a);
    cv.ratios.push_back(tau_t / tau_a);
    const double w = x * x;
    rsum += w * cv.ratios.back();
    wsum += w;
  }
  const double rmean = rsum / wsum;
  for (double r : cv.ratios) {
    cv.ratio_spread = std::max(cv.ratio_spread, std::fabs(r / rmean - 1.0));
  }
  cv.plateau = anchor.fit.plateau * rmean;
  cv.rel_err = std::fabs(cv.plateau - cv.plateau_expected) / cv.plateau_expected;
  return cv;
}

}  // namespace absorb
