#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "absorb/source_model.hpp"

using namespace absorb;

namespace {

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  }
  return out;
}

const MediumParams kMedia[] = {{1.0, 0.01}, {1.0, 0.0}, {1.0, 0.001},
                               {1.0, 0.1}};
const SourceParams kSources[] = {{0.81}, {0.9}, {0.99}, {1.2}};

}  // namespace

TEST_CASE("derive_wave reference values") {
  {
    const DerivedWave d = derive_wave({1.0, 0.0}, {0.9}, 100.0);
    CHECK(d.k0.real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(d.k0.imag() == doctest::Approx(std::sqrt(0.1)).epsilon(1e-14));
    CHECK(d.tau.real() == doctest::Approx(100.0 / (2.0 * std::sqrt(0.1))));
    CHECK(std::abs(d.tau.imag()) < 1e-12);
  }
  {
    const Complex k0 = branch_wavenumber({1.0, 0.01}, {1.0});
    CHECK(k0.real() == doctest::Approx(0.0707106781186547).epsilon(1e-12));
    CHECK(k0.imag() == doctest::Approx(0.0707106781186547).epsilon(1e-12));
  }
  CHECK_THROWS_AS((void)derive_wave({1.0, 0.0}, {1.0}, 1.0), std::domain_error);
  CHECK_THROWS_AS((void)derive_wave({1.0, 0.01}, {0.9}, -1.0),
                  std::domain_error);
  for (const auto& m : kMedia) {
    for (const auto& s : kSources) {
      if (m.v1 == 0.0 && s.omega0 == 1.0) continue;
      const DerivedWave d = derive_wave(m, s, 7.0);
      CHECK(d.k0.imag() >= 0.0);
      if (m.v1 > 0.0) CHECK(d.k0.real() > 0.0);
      CHECK(std::abs(d.tau) ==
            doctest::Approx(7.0 / (2.0 * std::abs(d.k0))).epsilon(1e-13));
    }
  }
}

TEST_CASE("boundary identity and onset conventions") {
  for (const auto& s : kSources) {
    const MediumParams m{1.0, 0.01};
    for (double t : log_spaced(1e-3, 1e4, 25)) {
      const Complex ref = std::exp(Complex(0.0, -s.omega0 * t));
      CHECK(std::abs(exact_psi(m, s, 0.0, t) - ref) <= 1e-12);
    }
  }
  CHECK(exact_psi({1.0, 0.01}, {0.9}, 0.0, 0.0) == Complex(1.0, 0.0));
  CHECK(exact_psi({1.0, 0.01}, {0.9}, 3.0, 0.0) == Complex(0.0, 0.0));
  // causality: density vanishes as t -> 0+
  CHECK(std::norm(exact_psi({1.0, 0.001}, {0.9}, 10.0, 1e-6)) < 1e-4);
}

TEST_CASE("oracle equivalence on a sparse matrix") {
  double worst = 0.0;
  for (const auto& m : kMedia) {
    for (const auto& s : kSources) {
      for (double x : {3.0, 20.0, 90.0}) {
        for (double t : {0.5, 8.0, 120.0, 1500.0}) {
          const Complex a = exact_psi(m, s, x, t);
          const Complex b = oracle_psi(m, s, x, t);
          worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
        }
      }
    }
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("pole term") {
  const MediumParams m{1.0, 0.01};
  const SourceParams s{0.9};
  const DerivedWave d = derive_wave(m, s, 40.0);
  CHECK(pole_psi(m, s, 40.0, 0.5 * d.tau_c) == Complex(0.0, 0.0));
  CHECK(std::abs(pole_psi(m, s, 40.0, 2.0 * d.tau_c)) ==
        doctest::Approx(std::exp(-d.k0.imag() * 40.0)).epsilon(1e-13));
  // above cutoff, Hermitian: unit modulus past tau_c
  const MediumParams mh{1.0, 0.0};
  const SourceParams sh{1.5};
  const double tc = derive_wave(mh, sh, 40.0).tau_c;
  CHECK(std::abs(pole_psi(mh, sh, 40.0, tc + 1.0)) ==
        doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("saddle scaling identity to 1e-12") {
  const MediumParams m{1.0, 0.01};
  const SourceParams s{0.9};
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> ux(std::log(5.0), std::log(150.0));
  std::uniform_real_distribution<double> ut(std::log(0.2), std::log(50.0));
  for (int i = 0; i < 50; ++i) {
    const double x = std::exp(ux(rng));
    const double t = std::exp(ut(rng));
    const double base = std::norm(saddle_psi(m, s, x, t));
    for (double eta : {0.5, 2.0, 10.0}) {
      const double scaled = std::norm(saddle_psi(m, s, eta * x, eta * t)) *
                            eta * std::exp(2.0 * t * m.v1 * (eta - 1.0));
      CHECK(std::fabs(scaled / base - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("saddle+pole approximates exact beyond the validity scale") {
  {
    const MediumParams m{1.0, 0.01};
    const SourceParams s{0.9};
    const Complex e = exact_psi(m, s, 100.0, 50.0);
    CHECK(std::abs(e - approx_psi(m, s, 100.0, 50.0)) / std::abs(e) <= 1e-2);
  }
  {
    const MediumParams m{1.0, 0.001};
    const SourceParams s{0.99};
    const Complex e = exact_psi(m, s, 100.0, 300.0);
    CHECK(std::abs(e - approx_psi(m, s, 100.0, 300.0)) / std::abs(e) <= 1e-2);
  }
}

TEST_CASE("argument minima sit at t = |tau|") {
  // u0(t) = (1+i)/sqrt(2) sqrt(t) (k0 - x/2t); |u0| is minimized at t = |tau|
  // with value sqrt(x (|k0| - Re k0)); the partner takes the + sign.
  const MediumParams m{1.0, 0.0};
  const SourceParams s{0.9};
  const double x = 30.0;
  const DerivedWave d = derive_wave(m, s, x);
  const auto u0_abs = [&](double t) {
    return std::abs(std::sqrt(t) * (d.k0 - x / (2.0 * t)));
  };
  // golden-section minimization
  double lo = 0.1 * std::abs(d.tau), hi = 10.0 * std::abs(d.tau);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
  for (int i = 0; i < 200; ++i) {
    if (u0_abs(a) < u0_abs(b)) {
      hi = b;
    } else {
      lo = a;
    }
    a = hi - gr * (hi - lo);
    b = lo + gr * (hi - lo);
  }
  const double t_min = 0.5 * (lo + hi);
  CHECK(t_min == doctest::Approx(std::abs(d.tau)).epsilon(1e-6));
  CHECK(u0_abs(t_min) ==
        doctest::Approx(std::sqrt(x * (std::abs(d.k0) - d.k0.real())))
            .epsilon(1e-6));
}

TEST_CASE("long-time absorbing limit approaches the stationary wave") {
  const MediumParams m{1.0, 0.01};
  const SourceParams s{0.9};
  const Complex k0 = branch_wavenumber(m, s);
  const double x = 25.0;
  const double target = std::exp(-k0.imag() * x);
  CHECK(std::abs(exact_psi(m, s, x, 5e4)) ==
        doctest::Approx(target).epsilon(1e-6));
}

TEST_CASE("sample_field layout and provenance") {
  const MediumParams m{1.0, 0.01};
  const SourceParams s{0.9};
  const ComplexField f =
      sample_field(m, s, {1.0, 2.0}, {0.5, 1.5, 2.5}, Provenance::exact);
  CHECK(f.nx() == 2);
  CHECK(f.nt() == 3);
  CHECK(f.provenance == Provenance::exact);
  CHECK(f.at(1, 2) == exact_psi(m, s, 2.0, 2.5));
}
