#include "absorb/source_model.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "absorb/faddeeva.hpp"

namespace absorb {

namespace {

const Complex kI(0.0, 1.0);
// e^{i pi/4}
const Complex kRot45(1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2);

struct PoleData {
  Complex u0;      // image of +k0
  Complex u0p;     // image of -k0
  Complex pref;    // e^{-iVt} e^{ix^2/4t}
  Complex k0;
};

PoleData pole_data(const MediumParams& m, const SourceParams& s, double x,
                   double t) {
  PoleData d;
  d.k0 = branch_wavenumber(m, s);
  const double drift = x / (2.0 * t);
  const double rt = std::sqrt(t);
  d.u0 = kRot45 * rt * (d.k0 - drift);
  d.u0p = kRot45 * rt * (-d.k0 - drift);
  const Complex v(m.cutoff, -m.v1);
  d.pref = std::exp(-kI * v * t + kI * x * x / (4.0 * t));
  return d;
}

void check_domain(double x, double t) {
  if (x < 0.0 || t < 0.0 || !std::isfinite(x) || !std::isfinite(t)) {
    throw std::domain_error("source_model: x and t must be finite and >= 0");
  }
}

}  // namespace

Complex branch_wavenumber(const MediumParams& m, const SourceParams& s) {
  Complex k = std::sqrt(Complex(s.omega0 - m.cutoff, m.v1));
  if (k.imag() < 0.0) k = -k;
  return k;
}

DerivedWave derive_wave(const MediumParams& m, const SourceParams& s,
                        double x) {
  if (x < 0.0) throw std::domain_error("derive_wave: x must be >= 0");
  if (s.omega0 == m.cutoff && m.v1 == 0.0) {
    throw std::domain_error(
        "derive_wave: degenerate branch point (omega0 = cutoff, v1 = 0)");
  }
  DerivedWave d;
  d.k0 = branch_wavenumber(m, s);
  d.tau = kI * x / (2.0 * d.k0);
  d.tau_c = x / (2.0 * (d.k0.real() + d.k0.imag()));
  d.validity_x = 1.0 / (std::abs(d.k0) - d.k0.real());
  return d;
}

Complex exact_psi(const MediumParams& m, const SourceParams& s, double x,
                  double t) {
  check_domain(x, t);
  if (t == 0.0) return (x == 0.0) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);

  const PoleData d = pole_data(m, s, x, t);
  // psi = pref/2 [w(-u0) + w(-u0')], with each w folded to the upper
  // half-plane: for Im(-u) < 0,
  //   pref/2 * w(-u) = exp(-i omega0 t + sgn i k0 x) - pref/2 * w(u),
  // using pref * exp(-u^2) = exp(-i omega0 t + sgn i k0 x). Keeping w in the
  // upper half-plane avoids both cancellation and overflow.
  Complex psi(0.0, 0.0);
  const struct {
    Complex u;
    double sgn;
  } parts[2] = {{d.u0, 1.0}, {d.u0p, -1.0}};
  for (const auto& p : parts) {
    const Complex mu = -p.u;
    if (mu.imag() >= 0.0) {
      psi += 0.5 * d.pref * faddeeva_w(mu);
    } else {
      psi += std::exp(-kI * s.omega0 * t + p.sgn * kI * d.k0 * x) -
             0.5 * d.pref * faddeeva_w(p.u);
    }
  }
  return psi;
}

Complex pole_psi(const MediumParams& m, const SourceParams& s, double x,
                 double t) {
  check_domain(x, t);
  const DerivedWave d = derive_wave(m, s, x);
  if (t < d.tau_c) return {0.0, 0.0};
  return std::exp(-kI * s.omega0 * t + kI * d.k0 * x);
}

Complex saddle_psi(const MediumParams& m, const SourceParams& s, double x,
                   double t) {
  if (x <= 0.0 || t <= 0.0) {
    throw std::domain_error("saddle_psi: requires x > 0, t > 0");
  }
  const DerivedWave d = derive_wave(m, s, x);
  const Complex denom = d.tau * d.tau + t * t;
  if (denom == Complex(0.0, 0.0)) {
    throw std::domain_error("saddle_psi: singular input (tau^2 + t^2 = 0)");
  }
  const Complex v(m.cutoff, -m.v1);
  const Complex pref = std::exp(-kI * v * t + kI * x * x / (4.0 * t));
  // Prefactor from the large-argument expansion of the exact closed form:
  // w(-u) ~ -i/(sqrt(pi) u) applied to both w terms gives
  // -sqrt(2) tau (t/pi)^{1/2} / [(1+i) k0 (tau^2 + t^2)] times the phase
  // factors; verified against exact_psi in the saddle-dominated regime.
  return -std::numbers::sqrt2 * pref * d.tau *
         std::sqrt(t / std::numbers::pi) / (Complex(1.0, 1.0) * d.k0 * denom);
}

Complex approx_psi(const MediumParams& m, const SourceParams& s, double x,
                   double t) {
  return pole_psi(m, s, x, t) + saddle_psi(m, s, x, t);
}

double default_contour_offset(const MediumParams& m, const SourceParams& s,
                              double x, double t) {
  const PoleData d = pole_data(m, s, x, t);
  double c = 0.75;
  for (int i = 0; i < 8; ++i) {
    if (std::fabs(d.u0.imag() - c) >= 0.35 &&
        std::fabs(d.u0p.imag() - c) >= 0.35) {
      return c;
    }
    c += 0.7;
  }
  return c;
}

Complex oracle_psi(const MediumParams& m, const SourceParams& s, double x,
                   double t, double contour_offset) {
  check_domain(x, t);
  if (t == 0.0) throw std::domain_error("oracle_psi: requires t > 0");
  if (!(contour_offset > 0.0)) {
    throw std::invalid_argument("oracle_psi: contour_offset must be > 0");
  }

  const PoleData d = pole_data(m, s, x, t);
  const double c = contour_offset;
  if (std::fabs(d.u0.imag() - c) < 0.05 || std::fabs(d.u0p.imag() - c) < 0.05) {
    throw std::invalid_argument(
        "oracle_psi: contour passes through a pole; adjust contour_offset");
  }

  // Integrate e^{-u^2} [1/(u-u0) + 1/(u-u0')] along Im(u) = c. Poles left
  // above the line are restored as residues (the defining contour passes
  // above both poles).
  const auto integrand = [&](double sx) -> Complex {
    const Complex u(sx, c);
    return std::exp(-u * u) *
           (1.0 / (u - d.u0) + 1.0 / (u - d.u0p));
  };
  // Gaussian factor e^{c^2 - s^2} is below 1e-16 of its peak past |s| ~ 6.1;
  // pad for the Lorentzian pole tails.
  const double L = 8.5;

  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  double err_re = 0.0, err_im = 0.0;
  const double re = GK::integrate([&](double sx) { return integrand(sx).real(); },
                                  -L, L, 15, 1e-13, &err_re);
  const double im = GK::integrate([&](double sx) { return integrand(sx).imag(); },
                                  -L, L, 15, 1e-13, &err_im);

  Complex psi = d.pref * (kI / (2.0 * std::numbers::pi)) * Complex(re, im);

  const double abs_err =
      std::abs(d.pref) * std::hypot(err_re, err_im) / (2.0 * std::numbers::pi);
  if (abs_err > 1e-10) {
    throw std::runtime_error("oracle_psi: quadrature failed to converge");
  }

  const struct {
    Complex u;
    double sgn;
  } parts[2] = {{d.u0, 1.0}, {d.u0p, -1.0}};
  for (const auto& p : parts) {
    if (p.u.imag() > c) {
      // 2 pi i * residue, folded through pref * e^{-u^2} = e^{-i w0 t +- i k0 x}
      psi += std::exp(-kI * s.omega0 * t + p.sgn * kI * d.k0 * x);
    }
  }
  return psi;
}

Complex oracle_psi(const MediumParams& m, const SourceParams& s, double x,
                   double t) {
  return oracle_psi(m, s, x, t, default_contour_offset(m, s, x, t));
}

ComplexField sample_field(const MediumParams& m, const SourceParams& s,
                          const std::vector<double>& xs,
                          const std::vector<double>& ts, Provenance method) {
  ComplexField f;
  f.x_samples = xs;
  f.t_samples = ts;
  f.provenance = method;
  f.values.resize(xs.size() * ts.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ts.size(); ++j) {
      Complex v;
      switch (method) {
        case Provenance::exact: v = exact_psi(m, s, xs[i], ts[j]); break;
        case Provenance::saddle: v = saddle_psi(m, s, xs[i], ts[j]); break;
        case Provenance::pole: v = pole_psi(m, s, xs[i], ts[j]); break;
        case Provenance::saddle_plus_pole:
          v = approx_psi(m, s, xs[i], ts[j]);
          break;
        case Provenance::quadrature_oracle:
          v = oracle_psi(m, s, xs[i], ts[j]);
          break;
        case Provenance::grid:
          throw std::invalid_argument(
              "sample_field: grid provenance is produced by the grid solver");
      }
      f.at(i, j) = v;
    }
  }
  return f;
}

}  // namespace absorb
