#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "absorb/source_model.hpp"

namespace absorb {

// Gaussian-windowed short-time Fourier power of a complex signal.
// Frequencies are reported so that a tone e^{-i omega t} lands in the bin at
// +omega. Each time slice satisfies the discrete Parseval identity:
// sum of power over bins equals the windowed |psi|^2 energy.
struct Spectrogram {
  double x = 0.0;
  double window_width = 0.0;  // Gaussian sigma
  std::vector<double> t_centers;
  std::vector<double> omega_bins;
  std::vector<double> power;  // row-major [center][bin]
  double bin_width = 0.0;

  double power_at(std::size_t ic, std::size_t ib) const {
    return power[ic * omega_bins.size() + ib];
  }
  double slice_energy(std::size_t ic) const;
  // Dominant frequency of the slice nearest t, parabolic-refined across bins.
  double dominant_frequency(double t) const;
  // CSV: t_center,omega,power
  void write_csv(std::ostream& os) const;
};

// n_bins must be a power of two (it is also the per-window sample count; the
// window is sampled over +-4 sigma). Throws std::invalid_argument when the
// window is too short to resolve the absorption-induced frequency offset
// (x v1)^2, and std::runtime_error when the bin width exceeds 25% of it.
Spectrogram spectrogram(const MediumParams& m,
                        const std::function<Complex(double)>& signal, double x,
                        double window_width, double t_lo, double t_hi,
                        int n_centers, int n_bins);

}  // namespace absorb
