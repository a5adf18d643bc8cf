#include "absorb/spectrogram.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace absorb {

double Spectrogram::slice_energy(std::size_t ic) const {
  double e = 0.0;
  for (std::size_t ib = 0; ib < omega_bins.size(); ++ib) e += power_at(ic, ib);
  return e;
}

double Spectrogram::dominant_frequency(double t) const {
  if (t_centers.empty()) throw std::runtime_error("empty spectrogram");
  std::size_t ic = 0;
  for (std::size_t i = 1; i < t_centers.size(); ++i) {
    if (std::fabs(t_centers[i] - t) < std::fabs(t_centers[ic] - t)) ic = i;
  }
  const std::size_t nb = omega_bins.size();
  std::size_t ib = 0;
  for (std::size_t i = 1; i < nb; ++i) {
    if (power_at(ic, i) > power_at(ic, ib)) ib = i;
  }
  double omega = omega_bins[ib];
  if (ib > 0 && ib + 1 < nb) {
    const double pm = power_at(ic, ib - 1);
    const double p0 = power_at(ic, ib);
    const double pp = power_at(ic, ib + 1);
    const double denom = pm - 2.0 * p0 + pp;
    if (denom < 0.0) {
      omega += 0.5 * (pm - pp) / denom * bin_width;
    }
  }
  return omega;
}

void Spectrogram::write_csv(std::ostream& os) const {
  os << "t_center,omega,power\n";
  for (std::size_t ic = 0; ic < t_centers.size(); ++ic) {
    for (std::size_t ib = 0; ib < omega_bins.size(); ++ib) {
      os << fmt17(t_centers[ic]) << ',' << fmt17(omega_bins[ib]) << ','
         << fmt17(power_at(ic, ib)) << '\n';
    }
  }
}

Spectrogram spectrogram(const MediumParams& m,
                        const std::function<Complex(double)>& signal, double x,
                        double window_width, double t_lo, double t_hi,
                        int n_centers, int n_bins) {
  if (n_bins < 8 || (n_bins & (n_bins - 1)) != 0) {
    throw std::invalid_argument("spectrogram: n_bins must be a power of two");
  }
  if (n_centers < 1 || !(t_hi > t_lo) || !(window_width > 0.0)) {
    throw std::invalid_argument("spectrogram: bad window/range arguments");
  }
  const double offset = (x * m.v1) * (x * m.v1);
  if (offset > 0.0 &&
      window_width < 2.0 * std::numbers::pi / (0.1 * offset + 1.0)) {
    throw std::invalid_argument(
        "spectrogram: window too short to resolve the frequency offset");
  }

  Spectrogram sg;
  sg.x = x;
  sg.window_width = window_width;
  const int n = n_bins;
  const double span = 8.0 * window_width;  // +-4 sigma
  const double dt = span / n;
  sg.bin_width = 2.0 * std::numbers::pi / span;
  if (m.v1 > 0.0 && offset > 0.0 && sg.bin_width > 0.25 * offset) {
    throw std::runtime_error(
        "spectrogram: bin width exceeds 25% of the predicted offset");
  }

  // Bins in ascending omega order: k = -n/2 .. n/2-1, omega = 2 pi k / span.
  sg.omega_bins.resize(n);
  for (int j = 0; j < n; ++j) {
    sg.omega_bins[j] = (j - n / 2) * sg.bin_width;
  }

  sg.t_centers.resize(n_centers);
  for (int i = 0; i < n_centers; ++i) {
    sg.t_centers[i] = n_centers == 1
                          ? 0.5 * (t_lo + t_hi)
                          : t_lo + (t_hi - t_lo) * i / (n_centers - 1);
  }

  sg.power.assign(static_cast<std::size_t>(n_centers) * n, 0.0);
  fftw_complex* buf = fftw_alloc_complex(n);
  fftw_plan plan =
      fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);

  for (int i = 0; i < n_centers; ++i) {
    const double c = sg.t_centers[i];
    for (int j = 0; j < n; ++j) {
      const double t = c + (j - n / 2) * dt;
      Complex v = (t > 0.0) ? signal(t) : Complex(0.0, 0.0);
      const double arg = (t - c) / window_width;
      const double w = std::exp(-0.5 * arg * arg);
      // conj so that e^{-i omega t} registers at +omega
      v = std::conj(v) * w;
      buf[j][0] = v.real();
      buf[j][1] = v.imag();
    }
    fftw_execute(plan);
    // FFT index j maps to omega 2 pi j / span for j < n/2, else negative.
    for (int j = 0; j < n; ++j) {
      const int k = (j < n / 2) ? j : j - n;  // signed bin index
      const int sorted = k + n / 2;
      const double p = (buf[j][0] * buf[j][0] + buf[j][1] * buf[j][1]) * dt / n;
      sg.power[static_cast<std::size_t>(i) * n + sorted] = p;
    }
  }
  fftw_destroy_plan(plan);
  fftw_free(buf);
  return sg;
}

}  // namespace absorb
