#include "absorb/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace absorb {

namespace {

std::function<Complex(double)> time_evaluator(const MediumParams& m,
                                              const SourceParams& s, double x,
                                              TimesMethod method) {
  switch (method) {
    case TimesMethod::numeric_exact:
      return [m, s, x](double t) { return exact_psi(m, s, x, t); };
    case TimesMethod::analytic_saddle:
      return [m, s, x](double t) { return saddle_psi(m, s, x, t); };
    case TimesMethod::numeric_grid:
      throw std::invalid_argument(
          "numeric_grid times come from grid probe series, not this evaluator");
  }
  throw std::invalid_argument("unknown method");
}

std::function<Complex(double)> space_evaluator(const MediumParams& m,
                                               const SourceParams& s, double t,
                                               TimesMethod method) {
  switch (method) {
    case TimesMethod::numeric_exact:
      return [m, s, t](double x) { return exact_psi(m, s, x, t); };
    case TimesMethod::analytic_saddle:
      return [m, s, t](double x) { return saddle_psi(m, s, x, t); };
    case TimesMethod::numeric_grid:
      throw std::invalid_argument(
          "numeric_grid times come from grid probe series, not this evaluator");
  }
  throw std::invalid_argument("unknown method");
}

}  // namespace

std::string to_string(TimesMethod m) {
  switch (m) {
    case TimesMethod::analytic_saddle: return "analytic_saddle";
    case TimesMethod::numeric_exact: return "numeric_exact";
    case TimesMethod::numeric_grid: return "numeric_grid";
  }
  return "unknown";
}

double measure_tau_T(const MediumParams& m, const SourceParams& s, double x,
                     TimesMethod method, double tol) {
  const DerivedWave d = derive_wave(m, s, x);
  const double plateau =
      m.v1 > 0.0 ? 1.0 / (2.0 * m.v1) : std::numeric_limits<double>::infinity();
  const double tau_abs = std::abs(d.tau);
  double lo = 1e-2 * std::min(d.tau_c, std::isfinite(plateau) ? plateau
                                                              : d.tau_c);
  double hi = 10.0 * std::max(tau_abs, std::isfinite(plateau) ? plateau : 0.0);
  const auto eval = time_evaluator(m, s, x, method);
  for (int attempt = 0;; ++attempt) {
    try {
      return temporal_peak(eval, lo, hi, tol);
    } catch (const NoInteriorMaximumError&) {
      if (attempt >= 4) throw;
      lo /= 10.0;
      hi *= 10.0;
    }
  }
}

TauTCurve tau_T_curve(const MediumParams& m, const SourceParams& s,
                      const std::vector<double>& x_list, TimesMethod method) {
  if (!std::is_sorted(x_list.begin(), x_list.end())) {
    throw std::invalid_argument("tau_T_curve: x_list must be ascending");
  }
  TauTCurve curve;
  curve.plateau =
      m.v1 > 0.0 ? 1.0 / (2.0 * m.v1) : std::numeric_limits<double>::infinity();
  curve.points.reserve(x_list.size());
  for (double x : x_list) {
    CurvePoint p;
    p.times.x = x;
    p.times.plateau = curve.plateau;
    p.times.method = method;
    try {
      const DerivedWave d = derive_wave(m, s, x);
      p.times.tau_c = d.tau_c;
      p.times.tau_abs = std::abs(d.tau);
      p.times.tau_T = measure_tau_T(m, s, x, method);
      p.ok = true;
    } catch (const std::exception& e) {
      p.ok = false;
      p.error = e.what();
    }
    curve.points.push_back(std::move(p));
  }
  std::vector<double> taus;
  for (const auto& p : curve.points) {
    if (p.ok) taus.push_back(p.times.tau_T);
  }
  curve.basin = detect_basin(taus, curve.plateau);
  return curve;
}

bool detect_basin(const std::vector<double>& tau_values, double plateau) {
  const std::size_t n = tau_values.size();
  if (n < 3) return false;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(tau_values[i] < tau_values[i - 1]) ||
        !(tau_values[i] <= tau_values[i + 1])) {
      continue;
    }
    double rise = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      rise = std::max(rise, tau_values[j] - tau_values[i]);
    }
    if (rise < 0.01 * tau_values[i]) continue;  // numerical ripple
    if (std::isfinite(plateau) && tau_values[i] > 0.5 * plateau) continue;
    return true;
  }
  return false;
}

double forerunner_position(const MediumParams& m, const SourceParams& s,
                           double t, TimesMethod method) {
  if (!(t > 0.0)) throw std::domain_error("forerunner_position: t must be > 0");
  const Complex k0 = branch_wavenumber(m, s);
  const double v_front = 2.0 * std::abs(k0);
  const double x_lo = 0.25 * v_front * t;
  const double x_hi = 3.0 * v_front * t;
  const auto eval = space_evaluator(m, s, t, method);

  // Outermost local maximum above 1e-6 of the global maximum in the window.
  const int n = 801;
  std::vector<double> xs(n), fs(n);
  double fmax = 0.0;
  for (int i = 0; i < n; ++i) {
    xs[i] = x_lo + (x_hi - x_lo) * i / (n - 1);
    fs[i] = std::norm(eval(xs[i]));
    fmax = std::max(fmax, fs[i]);
  }
  const double thresh = 1e-6 * fmax;
  for (int i = n - 2; i >= 1; --i) {
    if (fs[i] >= thresh && fs[i] >= fs[i - 1] && fs[i] >= fs[i + 1]) {
      const auto density = [&](double x) { return std::norm(eval(x)); };
      return peak_location(density, xs[i - 1], xs[i + 1], 1e-6 * xs[i], nullptr,
                           33);
    }
  }
  throw NoInteriorMaximumError(
      "forerunner_position: no qualifying lobe in the search window");
}

double measure_tau_S(const MediumParams& m, const SourceParams& s, double x,
                     TimesMethod method) {
  if (!(x > 0.0)) throw std::domain_error("measure_tau_S: x must be > 0");
  const Complex k0 = branch_wavenumber(m, s);
  const double t_ref = x / (2.0 * std::abs(k0));
  // forerunner_position(t) grows monotonically; bisect for position = x.
  double t_lo = 0.3 * t_ref, t_hi = 3.0 * t_ref;
  double p_lo = forerunner_position(m, s, t_lo, method);
  double p_hi = forerunner_position(m, s, t_hi, method);
  if (!(p_lo < x && x < p_hi)) {
    throw std::runtime_error("measure_tau_S: inversion bracket failed");
  }
  for (int i = 0; i < 60; ++i) {
    const double t_mid = 0.5 * (t_lo + t_hi);
    const double p_mid = forerunner_position(m, s, t_mid, method);
    if (p_mid < x) {
      t_lo = t_mid;
    } else {
      t_hi = t_mid;
    }
    if (t_hi - t_lo < 1e-7 * t_ref) break;
  }
  return 0.5 * (t_lo + t_hi);
}

void write_times_csv(std::ostream& os,
                     const std::vector<CharacteristicTimes>& rows) {
  os << "x,tau_c,tau_abs,tau_T,plateau,method\n";
  for (const auto& r : rows) {
    os << fmt17(r.x) << ',' << fmt17(r.tau_c) << ',' << fmt17(r.tau_abs) << ','
       << fmt17(r.tau_T) << ',' << fmt17(r.plateau) << ','
       << to_string(r.method) << '\n';
  }
}

}  // namespace absorb
