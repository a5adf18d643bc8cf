#include "absorb/shutter_model.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "absorb/peaks.hpp"

namespace absorb {

Complex shutter_psi(const MediumParams& m, double k0, double x, double t) {
  const Complex I(0.0, 1.0);
  const double pi = std::numbers::pi;
  if (!(x > 0.0) || !(t > 0.0)) {
    throw std::invalid_argument("shutter_psi: need x, t > 0");
  }
  if (!(k0 > 0.0)) throw std::invalid_argument("shutter_psi: need k0 > 0");
  const Complex V0(m.cutoff, -m.v1);

  const double qs = x / (2.0 * t);
  const Complex rot = std::exp(-I * pi / 4.0);

  // Gaussian factor is e^{-s^2 t}; stop at 1e-20 of the peak, and before the
  // left arm reaches the imaginary-axis branch cuts.
  const double S_gauss = std::sqrt(46.0 / t);
  const double S_cut = 0.85 * std::numbers::sqrt2 * qs;
  const double S = std::min(S_gauss, S_cut);
  if (S_cut < S_gauss * 0.6) {
    throw std::invalid_argument(
        "shutter_psi: x too small for this t (contour hits the cut)");
  }

  const Complex q0 = [&] {
    Complex r = std::sqrt(k0 * k0 - V0);
    if (r.imag() < 0.0) r = -r;
    return r;
  }();

  const auto integrand = [&](double s) -> Complex {
    const Complex q = qs + rot * s;
    const Complex kap = std::sqrt(q * q + V0);
    return rot * 2.0 * q * std::exp(I * q * x - I * (q * q + V0) * t) *
           (k0 + kap) / ((q * q + V0 - k0 * k0) * (kap + q));
  };

  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  double err = 0.0;
  const double re =
      GK::integrate([&](double s) { return integrand(s).real(); }, -S, S, 9,
                    1e-11, &err);
  const double im =
      GK::integrate([&](double s) { return integrand(s).imag(); }, -S, S, 9,
                    1e-11, &err);
  Complex total(re, im);

  // Poles above the descending line contribute residues:
  // Int_contour = Int_line - 2 pi i Res.
  for (const Complex qp : {q0, -q0}) {
    const double line_im_at = -(qp.real() - qs);  // Im of line at Re = Re(qp)
    if (qp.imag() > line_im_at) {
      const Complex kap0 = k0;  // kap(+-q0) = +k0 on the physical branch
      const Complex res =
          std::exp(I * qp * x - I * k0 * k0 * t) * (k0 + kap0) / (kap0 + qp);
      total -= 2.0 * pi * I * res;
    }
  }

  return -total / (2.0 * I * pi * std::sqrt(2.0 * pi));
}

double shutter_tau_T(const MediumParams& m, double k0, double x) {
  // The peak sits near the plateau once x v1 >~ 1 and near the free traversal
  // time below it; the smaller scale wins in either regime.
  const double free_guess = 1.2 * x / (2.0 * k0);
  const double guess =
      m.v1 > 0.0
          ? std::min((1.0 + 2.0 * k0 / (x * m.v1)) / (2.0 * m.v1), free_guess)
          : x / (2.0 * k0);
  double lo = 0.3 * guess, hi = 2.5 * guess;
  const auto eval = [&](double t) { return shutter_psi(m, k0, x, t); };
  for (int attempt = 0;; ++attempt) {
    try {
      return temporal_peak(eval, lo, hi, 0.0);
    } catch (const NoInteriorMaximumError&) {
      if (attempt >= 3) throw;
      lo *= 0.3;
      hi *= 2.0;
    }
  }
}

}  // namespace absorb
