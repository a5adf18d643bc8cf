#include "absorb/faddeeva.hpp"

#include <cmath>
#include <stdexcept>

namespace absorb {

namespace {

constexpr double kTwoOverSqrtPi = 1.12837916709551257388;
constexpr double kMaxReal = 0.5e154;
constexpr double kMaxExp = 708.503061461606;   // log of largest double
constexpr double kMaxGoni = 3.53711887601422e15;  // argument limit for sin/cos

}  // namespace

// Region-switched evaluation: Taylor series near the origin, a truncated
// Taylor expansion about a shifted point in the mid range, and a Laplace
// continued fraction in the far field. The lower half-plane is reached by
// reflection. Region boundaries follow the classic qrho ellipse partition.
std::complex<double> faddeeva_w(std::complex<double> z) {
  const double xi = z.real();
  const double yi = z.imag();
  if (!std::isfinite(xi) || !std::isfinite(yi)) {
    throw std::domain_error("faddeeva_w: non-finite argument");
  }

  const double xabs = std::fabs(xi);
  const double yabs = std::fabs(yi);
  if (xabs > kMaxReal || yabs > kMaxReal) {
    throw std::overflow_error("faddeeva_w: |z| too large");
  }

  const double xn = xabs / 6.3;
  const double yn = yabs / 4.4;
  double qrho = xn * xn + yn * yn;

  const double xabsq = xabs * xabs;
  double xquad = xabsq - yabs * yabs;
  const double yquad = 2.0 * xabs * yabs;

  double u = 0.0, v = 0.0;
  double u2 = 0.0, v2 = 0.0;
  const bool near_origin = qrho < 0.085264;

  if (near_origin) {
    // Power series; the truncation order tracks the distance from the origin.
    qrho = (1.0 - 0.85 * yn) * std::sqrt(qrho);
    const int n = static_cast<int>(std::lround(6.0 + 72.0 * qrho));
    int j = 2 * n + 1;
    double xsum = 1.0 / j;
    double ysum = 0.0;
    for (int i = n; i >= 1; --i) {
      j -= 2;
      const double xaux = (xsum * xquad - ysum * yquad) / i;
      ysum = (xsum * yquad + ysum * xquad) / i;
      xsum = xaux + 1.0 / j;
    }
    const double u1 = -kTwoOverSqrtPi * (xsum * yabs + ysum * xabs) + 1.0;
    const double v1 = kTwoOverSqrtPi * (xsum * xabs - ysum * yabs);
    const double daux = std::exp(-xquad);
    u2 = daux * std::cos(yquad);
    v2 = -daux * std::sin(yquad);
    u = u1 * u2 - v1 * v2;
    v = u1 * v2 + v1 * u2;
  } else {
    double h = 0.0, h2 = 0.0, qlambda = 0.0;
    int kapn = 0, nu = 0;
    if (qrho > 1.0) {
      // Far field: Laplace continued fraction.
      qrho = std::sqrt(qrho);
      nu = static_cast<int>(3.0 + 1442.0 / (26.0 * qrho + 77.0));
    } else {
      // Mid range: truncated Taylor expansion about a shifted point.
      qrho = (1.0 - yn) * std::sqrt(1.0 - qrho);
      h = 1.88 * qrho;
      h2 = 2.0 * h;
      kapn = static_cast<int>(std::lround(7.0 + 34.0 * qrho));
      nu = static_cast<int>(std::lround(16.0 + 26.0 * qrho));
    }
    const bool shifted = h > 0.0;
    if (shifted) qlambda = std::pow(h2, kapn);

    double rx = 0.0, ry = 0.0, sx = 0.0, sy = 0.0;
    for (int n = nu; n >= 0; --n) {
      const int np1 = n + 1;
      double tx = yabs + h + np1 * rx;
      double ty = xabs - np1 * ry;
      const double c = 0.5 / (tx * tx + ty * ty);
      rx = c * tx;
      ry = c * ty;
      if (shifted && n <= kapn) {
        tx = qlambda + sx;
        sx = rx * tx - ry * sy;
        sy = ry * tx + rx * sy;
        qlambda /= h2;
      }
    }
    if (h == 0.0) {
      u = kTwoOverSqrtPi * rx;
      v = kTwoOverSqrtPi * ry;
    } else {
      u = kTwoOverSqrtPi * sx;
      v = kTwoOverSqrtPi * sy;
    }
    if (yabs == 0.0) u = std::exp(-xabsq);
  }

  // Fold the first-quadrant value back to the requested quadrant.
  if (yi < 0.0) {
    if (near_origin) {
      u2 *= 2.0;
      v2 *= 2.0;
    } else {
      xquad = -xquad;
      if (yquad > kMaxGoni || xquad > kMaxExp) {
        throw std::overflow_error("faddeeva_w: exp(-z^2) overflow in lower half-plane");
      }
      const double w1 = 2.0 * std::exp(xquad);
      u2 = w1 * std::cos(yquad);
      v2 = -w1 * std::sin(yquad);
    }
    u = u2 - u;
    v = v2 - v;
    if (xi > 0.0) v = -v;
  } else {
    if (xi < 0.0) v = -v;
  }
  return {u, v};
}

double faddeeva_w_reflection_check(std::complex<double> z) {
  const std::complex<double> wp = faddeeva_w(z);
  const std::complex<double> wm = faddeeva_w(-z);
  const std::complex<double> e = 2.0 * std::exp(-z * z);
  return std::abs(wp + wm - e);
}

}  // namespace absorb
