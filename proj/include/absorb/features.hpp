#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "absorb/peaks.hpp"
#include "absorb/source_model.hpp"

namespace absorb {

enum class TimesMethod { analytic_saddle, numeric_exact, numeric_grid };

std::string to_string(TimesMethod m);

struct CharacteristicTimes {
  double x = 0.0;
  double tau_c = 0.0;    // main-signal crossing time
  double tau_abs = 0.0;  // |tau| = x / (2 |k0|), the spatial-maximum arrival
  double tau_T = 0.0;    // temporal-maximum time
  double plateau = 0.0;  // 1 / (2 v1), infinity when v1 = 0
  TimesMethod method = TimesMethod::numeric_exact;
};

struct CurvePoint {
  CharacteristicTimes times;
  bool ok = false;
  std::string error;
};

struct TauTCurve {
  std::vector<CurvePoint> points;
  double plateau = 0.0;
  bool basin = false;
};

// Temporal-maximum time at fixed x. Brackets from the characteristic scales
// and widens automatically when the coarse scan maximizes on a bracket edge.
double measure_tau_T(const MediumParams& m, const SourceParams& s, double x,
                     TimesMethod method = TimesMethod::numeric_exact,
                     double tol = 0.0);

// tau_T over an ascending x list, with per-point status and basin detection.
TauTCurve tau_T_curve(const MediumParams& m, const SourceParams& s,
                      const std::vector<double>& x_list,
                      TimesMethod method = TimesMethod::numeric_exact);

// Position of the forerunner lobe (outermost local maximum of |psi(.,t)|^2
// above 1e-6 of the global maximum) at time t.
double forerunner_position(const MediumParams& m, const SourceParams& s,
                           double t,
                           TimesMethod method = TimesMethod::numeric_exact);

// Arrival time of the spatial maximum at x: inverts forerunner_position.
double measure_tau_S(const MediumParams& m, const SourceParams& s, double x,
                     TimesMethod method = TimesMethod::numeric_exact);

// CSV: x,tau_c,tau_abs,tau_T,plateau,method
void write_times_csv(std::ostream& os,
                     const std::vector<CharacteristicTimes>& rows);

// Basin rule shared by curve producers: an interior local minimum counts
// when the curve afterwards rises by at least 1% of the minimum and the
// minimum sits below half the plateau (any depth qualifies when the plateau
// is infinite).
bool detect_basin(const std::vector<double>& tau_values, double plateau);

}  // namespace absorb
