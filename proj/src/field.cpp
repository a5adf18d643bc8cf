#include "absorb/field.hpp"

#include <cstdio>
#include <ostream>

namespace absorb {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::exact: return "exact";
    case Provenance::saddle: return "saddle";
    case Provenance::pole: return "pole";
    case Provenance::saddle_plus_pole: return "saddle_plus_pole";
    case Provenance::quadrature_oracle: return "quadrature_oracle";
    case Provenance::grid: return "grid";
  }
  return "unknown";
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

void ComplexField::write_csv(std::ostream& os) const {
  os << "x,t,re_psi,im_psi,density,provenance\n";
  const std::string prov = to_string(provenance);
  for (std::size_t ix = 0; ix < nx(); ++ix) {
    for (std::size_t it = 0; it < nt(); ++it) {
      const Complex& v = at(ix, it);
      os << fmt17(x_samples[ix]) << ',' << fmt17(t_samples[it]) << ','
         << fmt17(v.real()) << ',' << fmt17(v.imag()) << ','
         << fmt17(std::norm(v)) << ',' << prov << '\n';
    }
  }
}

}  // namespace absorb
