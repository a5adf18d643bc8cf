#pragma once

#include <functional>
#include <stdexcept>

#include "absorb/field.hpp"

namespace absorb {

// Raised when the density is monotone on the bracket (argmax on an edge).
class NoInteriorMaximumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PeakDiagnostics {
  double grid_argmax = 0.0;   // coarse-scan location
  double refined = 0.0;       // golden-section + quadratic-fit result
  double value = 0.0;         // density at the refined location
  bool multimodal_warning = false;  // polish disagrees with scan by > 10 tol
};

// Location of the interior maximum of |f|^2 on [lo, hi]. Coarse log-spaced
// scan to bracket, golden-section refine, quadratic-fit polish. tol <= 0
// selects the default 1e-4 * location.
double temporal_peak(const std::function<Complex(double)>& field_eval,
                     double t_lo, double t_hi, double tol,
                     PeakDiagnostics* diag = nullptr);

double spatial_peak(const std::function<Complex(double)>& field_eval,
                    double x_lo, double x_hi, double tol,
                    PeakDiagnostics* diag = nullptr);

// Shared engine, exposed for synthetic-profile tests: maximizes a scalar
// density function directly.
double peak_location(const std::function<double(double)>& density, double lo,
                     double hi, double tol, PeakDiagnostics* diag = nullptr,
                     int coarse_n = 401);

}  // namespace absorb
