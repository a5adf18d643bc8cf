#pragma once

#include "absorb/source_model.hpp"

namespace absorb {

// Semi-analytic solution of the released-plane-wave (shutter) problem: the
// state e^{i k0 x} Theta(-x) / sqrt(2 pi) is released at t = 0 against the
// step potential (cutoff - i v1) Theta(x), and the transmitted side is
// evaluated by spectral quadrature,
//
//   psi(x>0,t) = -(1/(2 pi i sqrt(2 pi))) Int dw e^{i q x - i w t}
//                (k0 + kap) / [(w - k0^2)(kap + q)],
//   kap = sqrt(w), q = sqrt(w - V0),  V0 = cutoff - i v1,
//
// contour above all singularities. The integration runs in the q plane along
// the steepest-descent line through the saddle q = x/(2t) (pure Gaussian
// decay, stable at large t); poles crossed by the rotation are restored as
// residues. Branch-cut contributions are neglected, which restricts use to
// x >~ 20; smaller x (or t too large for the given x) throws
// std::invalid_argument.
Complex shutter_psi(const MediumParams& m, double k0, double x, double t);

// Temporal-maximum time of |shutter_psi|^2 at fixed x, bracketed from the
// plateau 1/(2 v1) (or the traversal scale x/(2 k0) when v1 = 0) and refined
// by golden-section search.
double shutter_tau_T(const MediumParams& m, double k0, double x);

}  // namespace absorb
