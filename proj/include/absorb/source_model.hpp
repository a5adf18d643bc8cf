#pragma once

#include <vector>

#include "absorb/field.hpp"

namespace absorb {

// Medium with potential cutoff - i*v1 switched on for x > 0.
// Reduced units throughout (hbar = 2m = 1); cutoff is 1 unless a rescaled
// problem is being driven explicitly.
struct MediumParams {
  double cutoff = 1.0;
  double v1 = 0.0;
};

// Monochromatic source at x = 0 switched on sharply at t = 0.
struct SourceParams {
  double omega0 = 0.0;
};

// Quantities derived from (medium, source, x).
struct DerivedWave {
  Complex k0;         // wavenumber, Im >= 0 branch
  Complex tau;        // complex traversal time x / (-2 i k0)
  double tau_c;       // main-signal crossing time x / (2 [Re k0 + Im k0])
  double validity_x;  // asymptotics become reliable for x beyond this scale
};

// Wavenumber sqrt(omega0 - cutoff + i v1) on the Im >= 0 branch.
Complex branch_wavenumber(const MediumParams& m, const SourceParams& s);

// Throws std::domain_error for x < 0 and for the degenerate branch point
// omega0 = cutoff, v1 = 0 (k0 = 0, tau undefined).
DerivedWave derive_wave(const MediumParams& m, const SourceParams& s, double x);

// Closed-form solution. t = 0 returns the onset limit (1 at x = 0, else 0).
Complex exact_psi(const MediumParams& m, const SourceParams& s, double x,
                  double t);

// Main (monochromatic) signal term: e^{-i omega0 t + i k0 x} Theta(t - tau_c),
// with Theta(0) = 1.
Complex pole_psi(const MediumParams& m, const SourceParams& s, double x,
                 double t);

// Transient forerunner term (stationary-point asymptotics). Requires
// x > 0, t > 0.
Complex saddle_psi(const MediumParams& m, const SourceParams& s, double x,
                   double t);

// pole_psi + saddle_psi.
Complex approx_psi(const MediumParams& m, const SourceParams& s, double x,
                   double t);

// Brute-force adaptive quadrature of the spectral integral, evaluated on the
// rotated (steepest-descent-aligned) contour at elevation contour_offset,
// with residue bookkeeping for poles above the line. Absolute accuracy
// target 1e-10. Requires t > 0.
Complex oracle_psi(const MediumParams& m, const SourceParams& s, double x,
                   double t, double contour_offset);

// Picks a contour elevation clear of both poles (used by the no-offset call).
double default_contour_offset(const MediumParams& m, const SourceParams& s,
                              double x, double t);
Complex oracle_psi(const MediumParams& m, const SourceParams& s, double x,
                   double t);

// Evaluates one of the analytic methods over a grid.
ComplexField sample_field(const MediumParams& m, const SourceParams& s,
                          const std::vector<double>& xs,
                          const std::vector<double>& ts, Provenance method);

}  // namespace absorb
