#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace absorb {

using Complex = std::complex<double>;

enum class Provenance {
  exact,
  saddle,
  pole,
  saddle_plus_pole,
  quadrature_oracle,
  grid,
};

std::string to_string(Provenance p);

// Sampled wave function over a rectangular (x, t) grid.
struct ComplexField {
  std::vector<double> x_samples;
  std::vector<double> t_samples;
  std::vector<Complex> values;  // row-major, x outer, t inner
  Provenance provenance = Provenance::exact;

  std::size_t nx() const { return x_samples.size(); }
  std::size_t nt() const { return t_samples.size(); }

  Complex& at(std::size_t ix, std::size_t it) { return values[ix * nt() + it]; }
  const Complex& at(std::size_t ix, std::size_t it) const {
    return values[ix * nt() + it];
  }

  // CSV: x,t,re_psi,im_psi,density,provenance with 17 significant digits.
  void write_csv(std::ostream& os) const;
};

// 17-significant-digit formatting used for every numeric output.
std::string fmt17(double v);

}  // namespace absorb
