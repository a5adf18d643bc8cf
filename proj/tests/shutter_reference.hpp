#pragma once

// Test-suite oracle for the grid solver: the spectral-quadrature shutter
// solution. Evaluation is entirely independent of the finite-difference path
// (steepest-descent-line Gauss-Kronrod quadrature plus pole residues); see
// shutter_model.cpp for the contour details and the x >~ 20 restriction.

#include <complex>

#include "absorb/shutter_model.hpp"

namespace absorb::testing {

inline std::complex<double> shutter_reference(double x, double t, double k0,
                                              std::complex<double> V0) {
  const absorb::MediumParams m{V0.real(), -V0.imag()};
  return absorb::shutter_psi(m, k0, x, t);
}

}  // namespace absorb::testing
