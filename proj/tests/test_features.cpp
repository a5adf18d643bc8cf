#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "absorb/features.hpp"
#include "absorb/peaks.hpp"
#include "absorb/spectrogram.hpp"

using namespace absorb;

TEST_CASE("peak finder recovers synthetic unimodal maxima") {
  struct Profile {
    double peak;
    std::function<double(double)> f;
  };
  const Profile profiles[] = {
      {3.0, [](double t) { return std::exp(-(t - 3.0) * (t - 3.0)); }},
      {7.5, [](double t) { return 1.0 / (1.0 + (t - 7.5) * (t - 7.5)); }},
      {1.2, [](double t) { return -(t - 1.2) * (t - 1.2) + 9.0; }},
      {4.0, [](double t) { return std::exp(-std::fabs(t - 4.0)); }},
      {2.0,
       [](double t) { return t * std::exp(-t / 2.0); }},  // Gamma-like, max 2
      {5.0, [](double t) { return std::cos(0.3 * (t - 5.0)); }},
      {6.0,
       [](double t) {  // asymmetric: sharp rise, slow decay
         return t < 6.0 ? std::exp(4.0 * (t - 6.0)) : std::exp(-(t - 6.0));
       }},
      {0.5, [](double t) { return 1.0 - (t - 0.5) * (t - 0.5) * 4.0; }},
      {std::numbers::pi / 0.38,
       [](double t) { return std::pow(std::sin(0.19 * t), 2.0); }},
      {2.5,
       [](double t) {  // flat-topped
         return std::exp(-std::pow(t - 2.5, 4.0));
       }},
  };
  for (const auto& p : profiles) {
    const double got = peak_location(p.f, 0.05, 10.0, 1e-6);
    CHECK(got == doctest::Approx(p.peak).epsilon(1e-4));
  }
}

TEST_CASE("monotone density raises NoInteriorMaximumError") {
  CHECK_THROWS_AS(
      (void)peak_location([](double t) { return t; }, 0.1, 1.0, 1e-6),
      NoInteriorMaximumError);
  CHECK_THROWS_AS(
      (void)peak_location([](double t) { return -t; }, 0.1, 1.0, 1e-6),
      NoInteriorMaximumError);
}

TEST_CASE("basin detection") {
  // interior dip then recovery toward a plateau
  CHECK(detect_basin({10.0, 6.0, 4.0, 5.0, 8.0, 9.9, 10.0}, 10.0));
  // monotone approach: no basin
  CHECK(!detect_basin({2.0, 3.0, 4.0, 4.7, 5.0, 5.0}, 5.0));
  // ripple below 1% does not count
  CHECK(!detect_basin({5.02, 5.001, 5.003, 5.0, 5.01}, 5.0));
  // dip above half the plateau does not count
  CHECK(!detect_basin({9.0, 8.0, 7.9, 8.5, 10.0}, 10.0));
  // infinite plateau: any qualifying dip counts
  CHECK(detect_basin({30.0, 20.0, 25.0, 60.0},
                     std::numeric_limits<double>::infinity()));
}

TEST_CASE("temporal peak hits the plateau 1/(2 v1)") {
  const MediumParams m{1.0, 0.01};
  const SourceParams s{0.81};
  const double ak0 = std::abs(branch_wavenumber(m, s));
  const double x = 20.0 * std::numbers::sqrt2 * ak0 / m.v1;
  CHECK(measure_tau_T(m, s, x) == doctest::Approx(50.0).epsilon(0.02));
}

TEST_CASE("Hermitian limit: transient peak at tau/sqrt(3)") {
  const MediumParams m{1.0, 0.0};
  const SourceParams s{0.9};
  const double x = 10.0 * derive_wave(m, s, 1.0).validity_x;
  const double tau = x / (2.0 * std::abs(branch_wavenumber(m, s)));
  const double got = measure_tau_T(m, s, x, TimesMethod::analytic_saddle);
  CHECK(got == doctest::Approx(tau / std::sqrt(3.0)).epsilon(0.01));
}

TEST_CASE("spatial law tau_S = x/(2|k0|)") {
  const MediumParams m{1.0, 0.0};
  const SourceParams s{0.9};
  const double x = 30.0 * derive_wave(m, s, 1.0).validity_x;
  const double ak0 = std::abs(branch_wavenumber(m, s));
  CHECK(measure_tau_S(m, s, x) ==
        doctest::Approx(x / (2.0 * ak0)).epsilon(0.02));
}

TEST_CASE("tau_T_curve: ordering, per-point status, basin flags") {
  const MediumParams m{1.0, 0.1};
  const SourceParams s{0.81};
  std::vector<double> xs;
  for (int i = 0; i < 12; ++i) xs.push_back(2.0 * std::pow(1.6, i));
  const TauTCurve curve = tau_T_curve(m, s, xs);
  CHECK(curve.plateau == doctest::Approx(5.0));
  CHECK(curve.points.size() == xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(curve.points[i].ok);
    CHECK(curve.points[i].times.x == xs[i]);
  }
  CHECK(!curve.basin);  // strong absorption: no basin
  CHECK(curve.points.back().times.tau_T == doctest::Approx(5.0).epsilon(0.02));
  CHECK_THROWS_AS((void)tau_T_curve(m, s, {5.0, 1.0}), std::invalid_argument);
}

TEST_CASE("spectrogram: calibration tone, Parseval, resolution guard") {
  const MediumParams m{1.0, 0.0};
  const double w1 = 2.7;
  const auto tone = [&](double t) {
    return std::exp(Complex(0.0, -w1 * t));
  };
  const double sigma = 6.0;
  const Spectrogram sg = spectrogram(m, tone, 10.0, sigma, 30.0, 60.0, 5, 256);

  // dominant bin at +w1 for every slice (refined well below one bin width)
  for (double tc : sg.t_centers) {
    CHECK(std::fabs(sg.dominant_frequency(tc) - w1) < 0.2 * sg.bin_width);
  }

  // Parseval: slice power sum equals the windowed |psi|^2 energy
  const int n = 256;
  const double span = 8.0 * sigma, dt = span / n;
  for (std::size_t ic = 0; ic < sg.t_centers.size(); ++ic) {
    double direct = 0.0;
    for (int j = 0; j < n; ++j) {
      const double t = sg.t_centers[ic] + (j - n / 2) * dt;
      const double w = std::exp(-0.5 * std::pow((t - sg.t_centers[ic]) / sigma,
                                                2.0));
      direct += std::norm(tone(t)) * w * w * dt;
    }
    CHECK(std::fabs(sg.slice_energy(ic) - direct) / direct <= 1e-6);
  }

  // resolution guards
  const MediumParams ma{1.0, 0.01};
  CHECK_THROWS_AS((void)spectrogram(ma, tone, 2000.0, 1e-3, 30.0, 60.0, 3, 256),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)spectrogram(ma, tone, 2000.0, 0.2, 30.0, 60.0, 3, 100),
                  std::invalid_argument);  // n_bins not a power of two
}

TEST_CASE("spectrogram of the stationary pole regime peaks at omega0") {
  // above cutoff the pole term has unit modulus and dominates at long times
  const MediumParams m{1.0, 0.0};
  const SourceParams s{1.5};
  const double x = 30.0;
  const double tau = x / (2.0 * std::abs(branch_wavenumber(m, s)));
  const auto sig = [&](double t) { return exact_psi(m, s, x, t); };
  const Spectrogram sg =
      spectrogram(m, sig, x, 40.0, 20.0 * tau, 22.0 * tau, 3, 512);
  CHECK(sg.dominant_frequency(21.0 * tau) ==
        doctest::Approx(1.5).epsilon(0.02));
}
