#include "absorb/peaks.hpp"

#include <cmath>
#include <vector>

namespace absorb {

namespace {

// Quadratic fit through three points; returns the vertex abscissa or the
// middle point when the fit degenerates.
double quadratic_vertex(double a, double b, double c, double fa, double fb,
                        double fc) {
  const double d1 = (b - a) * (fb - fc);
  const double d2 = (b - c) * (fb - fa);
  const double denom = 2.0 * (d1 - d2);
  if (denom == 0.0) return b;
  const double num = (b - a) * d1 - (b - c) * d2;
  const double v = b - num / denom;
  if (!(v > std::min(a, c) && v < std::max(a, c))) return b;
  return v;
}

}  // namespace

double peak_location(const std::function<double(double)>& density, double lo,
                     double hi, double tol, PeakDiagnostics* diag,
                     int coarse_n) {
  if (!(hi > lo) || !(lo > 0.0)) {
    throw std::invalid_argument("peak_location: need 0 < lo < hi");
  }
  // Coarse bracket on a log-spaced grid.
  const double llo = std::log(lo), lhi = std::log(hi);
  std::vector<double> xs(coarse_n), fs(coarse_n);
  int imax = 0;
  for (int i = 0; i < coarse_n; ++i) {
    xs[i] = std::exp(llo + (lhi - llo) * i / (coarse_n - 1));
    fs[i] = density(xs[i]);
    if (fs[i] > fs[imax]) imax = i;
  }
  if (imax == 0 || imax == coarse_n - 1) {
    throw NoInteriorMaximumError(
        "peak_location: density has no interior maximum on the bracket");
  }

  double a = xs[imax - 1], c = xs[imax + 1];
  if (tol <= 0.0) tol = 1e-4 * xs[imax];

  // Golden-section refinement of the maximum.
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = c - invphi * (c - a);
  double x2 = a + invphi * (c - a);
  double f1 = density(x1), f2 = density(x2);
  while (c - a > 0.25 * tol) {
    if (f1 > f2) {
      c = x2;
      x2 = x1;
      f2 = f1;
      x1 = c - invphi * (c - a);
      f1 = density(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (c - a);
      f2 = density(x2);
    }
  }
  const double mid = 0.5 * (a + c);
  const double fmid = density(mid);
  const double h = 0.5 * (c - a) + 0.25 * tol;
  const double polished = quadratic_vertex(mid - h, mid, mid + h,
                                           density(mid - h), fmid,
                                           density(mid + h));
  if (diag) {
    diag->grid_argmax = xs[imax];
    diag->refined = polished;
    diag->value = density(polished);
    diag->multimodal_warning =
        std::fabs(polished - xs[imax]) >
        std::max(10.0 * tol, xs[imax + 1] - xs[imax - 1]);
  }
  return polished;
}

double temporal_peak(const std::function<Complex(double)>& field_eval,
                     double t_lo, double t_hi, double tol,
                     PeakDiagnostics* diag) {
  return peak_location(
      [&](double t) { return std::norm(field_eval(t)); }, t_lo, t_hi, tol,
      diag);
}

double spatial_peak(const std::function<Complex(double)>& field_eval,
                    double x_lo, double x_hi, double tol,
                    PeakDiagnostics* diag) {
  return peak_location(
      [&](double x) { return std::norm(field_eval(x)); }, x_lo, x_hi, tol,
      diag);
}

}  // namespace absorb
