#include "absorb/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <nlohmann/json.hpp>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "absorb/faddeeva.hpp"
#include "absorb/features.hpp"
#include "absorb/grid_features.hpp"
#include "absorb/grid_solver.hpp"
#include "absorb/scenario.hpp"
#include "absorb/source_model.hpp"
#include "absorb/two_channel.hpp"

#ifndef ABSORB_DATA_DIR
#define ABSORB_DATA_DIR "tests/data"
#endif

namespace absorb {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

// The four source fixtures: one frequency per regime (deep below cutoff,
// Hermitian below cutoff, near cutoff, above cutoff).
struct Fixture {
  double omega0, v1;
};
const Fixture kFixtures[] = {{0.81, 0.01}, {0.9, 0.0}, {0.99, 0.001},
                             {1.2, 0.1}};

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  }
  return out;
}

void run_check(AcceptanceReport& rep, int id, const std::string& name,
               const std::function<void(CriterionResult&)>& body) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  const auto t0 = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  rep.pass = rep.pass && r.pass;
  rep.results.push_back(std::move(r));
}

// ------------------------------------------------------------ suite bodies

void suite_special_functions(AcceptanceReport& rep) {
  run_check(rep, 0, "faddeeva fixture table", [](CriterionResult& r) {
    std::ifstream is(std::string(ABSORB_DATA_DIR) + "/faddeeva_fixture.txt");
    if (!is) throw std::runtime_error("fixture table not found");
    std::string line;
    double worst_upper = 0.0, worst_lower = 0.0;
    int n = 0;
    while (std::getline(is, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream ls(line);
      double zr, zi, wr, wi;
      if (!(ls >> zr >> zi >> wr >> wi)) {
        throw std::runtime_error("malformed fixture line: " + line);
      }
      const std::complex<double> ref(wr, wi);
      const std::complex<double> got = faddeeva_w({zr, zi});
      const double rel = std::abs(got - ref) / std::abs(ref);
      (zi >= 0.0 ? worst_upper : worst_lower) =
          std::max(zi >= 0.0 ? worst_upper : worst_lower, rel);
      ++n;
    }
    r.measured = std::max(worst_upper, worst_lower / 100.0);
    r.tolerance = 1e-13;
    r.pass = worst_upper <= 1e-13 && worst_lower <= 1e-10;
    std::ostringstream d;
    d << n << " points; worst rel err upper half-plane " << worst_upper
      << " (tol 1e-13), lower " << worst_lower << " (tol 1e-10)";
    r.detail = d.str();
  });

  run_check(rep, 0, "faddeeva reflection identity", [](CriterionResult& r) {
    double worst = 0.0;
    for (double re : {-3.0, -1.2, -0.3, 0.0, 0.5, 1.7, 3.0}) {
      for (double im : {-2.0, -0.5, 0.0, 0.4, 2.0}) {
        const std::complex<double> z(re, im);
        const double scale = std::max(1.0, std::abs(2.0 * std::exp(-z * z)));
        worst = std::max(worst, faddeeva_w_reflection_check(z) / scale);
      }
    }
    r.measured = worst;
    r.tolerance = 1e-10;
    r.pass = worst <= r.tolerance;
    r.detail = "w(z) + w(-z) = 2 exp(-z^2), 35 moderate spot points";
  });
}

void suite_source_exact(AcceptanceReport& rep) {
  run_check(rep, 1, "boundary identity", [](CriterionResult& r) {
    double worst = 0.0;
    for (const Fixture& f : kFixtures) {
      const MediumParams m{1.0, f.v1};
      const SourceParams s{f.omega0};
      for (double t : log_spaced(1e-3, 1e4, 60)) {
        const Complex ref = std::exp(Complex(0.0, -f.omega0 * t));
        worst = std::max(worst, std::abs(exact_psi(m, s, 0.0, t) - ref));
      }
    }
    r.measured = worst;
    r.tolerance = 1e-12;
    r.pass = worst <= r.tolerance;
    r.detail = "|exact_psi(0,t) - e^{-i omega0 t}|, 60 log times x 4 fixtures";
  });

  run_check(rep, 2, "oracle equivalence", [](CriterionResult& r) {
    double worst = 0.0;
    for (const Fixture& f : kFixtures) {
      const MediumParams m{1.0, f.v1};
      const SourceParams s{f.omega0};
      for (double x : log_spaced(2.0, 100.0, 20)) {
        for (double t : log_spaced(0.1, 2000.0, 20)) {
          const Complex a = exact_psi(m, s, x, t);
          const Complex b = oracle_psi(m, s, x, t);
          worst = std::max(worst,
                           std::abs(a - b) / std::max(1.0, std::abs(a)));
        }
      }
    }
    r.measured = worst;
    r.tolerance = 1e-8;
    r.pass = worst <= r.tolerance;
    r.detail = "exact_psi vs quadrature oracle, 20x20 grid x 4 fixtures";
  });
}

void suite_features(AcceptanceReport& rep, const std::string& work_dir) {
  run_check(rep, 3, "central claim plateau", [](CriterionResult& r) {
    double worst = 0.0;
    std::string worst_at;
    int outside = 0;
    for (double w0 : {0.81, 0.9, 1.2}) {
      for (double v1 : {1e-3, 1e-2, 1e-1}) {
        const MediumParams m{1.0, v1};
        const SourceParams s{w0};
        const double ak0 = std::abs(branch_wavenumber(m, s));
        for (double mult : {10.0, 20.0, 50.0}) {
          const double x = mult * std::numbers::sqrt2 * ak0 / v1;
          const double prod = measure_tau_T(m, s, x) * 2.0 * v1;
          const double dev = std::fabs(prod - 1.0);
          if (dev > 0.02) ++outside;
          if (dev > worst) {
            worst = dev;
            std::ostringstream at;
            at << "omega0=" << w0 << " v1=" << v1 << " mult=" << mult;
            worst_at = at.str();
          }
        }
      }
    }
    r.measured = worst;
    r.tolerance = 0.02;
    r.pass = outside == 0;
    std::ostringstream d;
    d << outside << "/27 points outside [0.98,1.02]; worst |tau_T*2v1 - 1| = "
      << worst << " at " << worst_at
      << ". The residual decays like 4(omega0-1)/(x v1)^2; above cutoff at "
         "the smallest distance multiplier it still exceeds the band.";
    r.detail = d.str();
  });

  run_check(rep, 4, "Hermitian limit tau_T = tau/sqrt(3)", [](CriterionResult& r) {
    const MediumParams m{1.0, 0.0};
    const SourceParams s{0.9};
    const DerivedWave d = derive_wave(m, s, 1.0);
    const double x = 10.0 * d.validity_x;
    const double tau = x / (2.0 * std::abs(branch_wavenumber(m, s)));
    const double tau_T =
        measure_tau_T(m, s, x, TimesMethod::analytic_saddle);
    r.measured = std::fabs(tau_T / (tau / std::sqrt(3.0)) - 1.0);
    r.tolerance = 0.01;
    r.pass = r.measured <= r.tolerance;
    std::ostringstream det;
    det << "x = " << x << ", tau_T = " << tau_T << ", tau/sqrt(3) = "
        << tau / std::sqrt(3.0) << " (transient-term peak)";
    r.detail = det.str();
  });

  run_check(rep, 5, "spatial law tau_S = x/(2|k0|)", [](CriterionResult& r) {
    double worst = 0.0;
    std::string fallbacks;
    for (const Fixture& f : kFixtures) {
      const MediumParams m{1.0, f.v1};
      const SourceParams s{f.omega0};
      const double ak0 = std::abs(branch_wavenumber(m, s));
      const double x = f.v1 > 0.0
                           ? 5.0 * std::numbers::sqrt2 * ak0 / f.v1
                           : 30.0 * derive_wave(m, s, 1.0).validity_x;
      double tau_S;
      try {
        tau_S = measure_tau_S(m, s, x);
      } catch (const NoInteriorMaximumError&) {
        // Above cutoff with strong absorption the stationary wave decays
        // faster than the monotone transient tail and the exact profile has
        // no traveling lobe; the spatial-law claim is about the transient
        // term, so measure its peak directly.
        tau_S = measure_tau_S(m, s, x, TimesMethod::analytic_saddle);
        std::ostringstream fb;
        fb << " [transient-term lobe at omega0=" << f.omega0
           << " v1=" << f.v1 << ": exact profile is monotone]";
        fallbacks += fb.str();
      }
      worst = std::max(worst, std::fabs(tau_S * 2.0 * ak0 / x - 1.0));
    }
    r.measured = worst;
    r.tolerance = 0.02;
    r.pass = worst <= r.tolerance;
    r.detail =
        "forerunner arrival vs traversal time, 4 fixtures, large x" + fallbacks;
  });

  run_check(rep, 6, "saddle scaling identity", [](CriterionResult& r) {
    const MediumParams m{1.0, 0.01};
    const SourceParams s{0.9};
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> ux(std::log(5.0), std::log(150.0));
    std::uniform_real_distribution<double> ut(std::log(0.2), std::log(50.0));
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double x = std::exp(ux(rng));
      const double t = std::exp(ut(rng));
      const double base = std::norm(saddle_psi(m, s, x, t));
      for (double eta : {0.5, 2.0, 10.0}) {
        const double scaled = std::norm(saddle_psi(m, s, eta * x, eta * t)) *
                              eta * std::exp(2.0 * t * m.v1 * (eta - 1.0));
        worst = std::max(worst, std::fabs(scaled / base - 1.0));
      }
    }
    r.measured = worst;
    r.tolerance = 1e-12;
    r.pass = worst <= r.tolerance;
    r.detail = "|psi_s(eta x, eta t)|^2 eta e^{2 t v1 (eta-1)} vs "
               "|psi_s(x,t)|^2, 50 seeded points, eta in {0.5,2,10}";
  });

  run_check(rep, 7, "basin phenomenology", [work_dir](CriterionResult& r) {
    ScenarioSpec spec;
    spec.scenario = "fig3a_tauT_vs_x";
    spec.output_dir = work_dir + "/fig3a";
    const ScenarioResult res = run_scenario(spec);
    const Json doc = Json::parse(res.summary_json);
    bool ok = true;
    std::ostringstream d;
    for (const auto& c : doc["summary"]["curves"]) {
      const double v1 = std::stod(c["v1"].get<std::string>());
      const bool basin = c["basin"].get<bool>();
      d << "v1=" << v1 << " basin=" << (basin ? "true" : "false") << "  ";
      if (v1 == 0.0 || v1 == 0.001) ok = ok && basin;
      if (v1 == 0.1) ok = ok && !basin;
    }
    r.pass = ok;
    r.measured = ok ? 1.0 : 0.0;
    r.tolerance = 1.0;
    r.detail = d.str() + "(require basin at v1 in {0, 0.001}, none at 0.1)";
  });

  run_check(rep, 10, "spectrogram dominant frequency", [work_dir](CriterionResult& r) {
    ScenarioSpec spec;
    spec.scenario = "spectrogram";
    spec.output_dir = work_dir + "/spectrogram";
    const ScenarioResult res = run_scenario(spec);
    const Json doc = Json::parse(res.summary_json);
    double worst = 0.0;
    bool ok = true;
    std::ostringstream d;
    for (const auto& c : doc["summary"]["curves"]) {
      const double got =
          std::stod(c["dominant_frequency_at_peak"].get<std::string>());
      const double want = std::stod(c["predicted_frequency"].get<std::string>());
      const double bin = std::stod(c["bin_width"].get<std::string>());
      const double dev = std::fabs(got - want);
      worst = std::max(worst, dev / bin);
      ok = ok && dev <= bin;
      d << "xi=" << c["xi"].get<std::string>() << ": " << got << " vs " << want
        << " (bin " << bin << ")  ";
    }
    r.measured = worst;
    r.tolerance = 1.0;
    r.pass = ok;
    r.detail = d.str() + "(deviation in units of one bin)";
  });
}

void suite_grid(AcceptanceReport& rep) {
  run_check(rep, 11, "norm properties", [](CriterionResult& r) {
    GridConfig g;
    g.x_min = -40.0;
    g.x_max = 40.0;
    g.dx = 0.04;
    g.dt = 2e-4;
    g.t_max = 4.0;
    g.band_limit_k1 = 8.0;
    g.band_limit_k2 = 12.0;
    g.probes = {10.0};
    g.probe_stride = 100;
    GridConfig gh = g;
    gh.edge = EdgeTreatment::hard_wall;
    const GridRun herm = shutter_evolve({1.0, 0.0}, 0.9, gh);
    const GridRun absb = shutter_evolve({1.0, 0.1}, 0.9, g);
    r.measured = std::max(herm.audit.max_drift_per_step / 1e-10,
                          absb.audit.max_bookkeeping_err / 1e-3);
    r.tolerance = 1.0;
    r.pass = herm.audit.max_drift_per_step <= 1e-10 &&
             absb.audit.max_bookkeeping_err <= 1e-3 &&
             absb.audit.norm_monotone;
    std::ostringstream d;
    d << "Hermitian drift/step " << herm.audit.max_drift_per_step
      << " (tol 1e-10); absorbing loss vs -2 <Gamma> rel err "
      << absb.audit.max_bookkeeping_err << " (tol 1e-3), monotone="
      << (absb.audit.norm_monotone ? "true" : "false");
    r.detail = d.str();
  });
}

void suite_cross_validation(AcceptanceReport& rep) {
  run_check(rep, 8, "grid plateau cross-validation", [](CriterionResult& r) {
    const ShutterCrossValidation anchor =
        cross_validate_shutter(0.1, 0.9, {60.0, 120.0, 240.0}, true);
    const ScaledCrossValidation scaled = cross_validate_shutter_scaled(
        0.01, 0.9, {320.0, 640.0, 1280.0}, anchor);
    r.measured = std::max(anchor.rel_err, scaled.rel_err);
    r.tolerance = 0.05;
    r.pass = r.measured <= r.tolerance;
    std::ostringstream d;
    d << "v1=0.1: plateau " << anchor.fit.plateau << " vs 5 (rel "
      << anchor.rel_err << "); v1=0.01: plateau " << scaled.plateau
      << " vs 50 (rel " << scaled.rel_err << ", ratio spread "
      << scaled.ratio_spread << ")";
    r.detail = d.str();
  });

  run_check(rep, 9, "two-channel reduction", [](CriterionResult& r) {
    TwoChannelParams p;
    p.omega_rabi = std::sqrt(1616.0);
    p.detuning = 400.0;
    p.gamma = 80.0;
    p.hbar = 1.0;
    p.mass = 0.5;
    p.k0_dimensional = 0.9;
    const auto [m, map] = reduce_to_effective(p);
    GridConfig g = shutter_probe_config(m.v1, 0.9, 240.0);
    g.probes = {60.0, 120.0, 240.0};
    const GridRun eff = shutter_evolve(m, 0.9, g);
    const TwoChannelRun tc = two_channel_evolve(p, g);

    double worst_dev = 0.0;
    std::vector<double> xs = {60.0, 120.0, 240.0}, taus;
    for (int ip = 0; ip < 3; ++ip) {
      const auto de = eff.probe_density(ip);
      const auto dc = tc.ch1.probe_density(ip);
      const double t_min = xs[ip] / (2.0 * 0.9 * g.band_limit_k1);
      double peak = 0.0;
      for (std::size_t i = 0; i < de.size(); ++i) {
        if (eff.probe_t[i] >= t_min) peak = std::max(peak, de[i]);
      }
      for (std::size_t i = 0; i < de.size(); ++i) {
        if (eff.probe_t[i] < t_min || de[i] < 0.02 * peak) continue;
        worst_dev = std::max(worst_dev, std::fabs(dc[i] - de[i]) / de[i]);
      }
      taus.push_back(grid_tau_T(tc.ch1.probe_t, dc, t_min).tau_T);
    }
    const double plateau = fit_plateau(xs, taus).plateau;
    const double expect = 1.0 / (2.0 * m.v1);
    const double plat_err = std::fabs(plateau - expect) / expect;
    r.measured = std::max(worst_dev, plat_err);
    r.tolerance = 0.05;
    r.pass = r.measured <= r.tolerance;
    std::ostringstream d;
    d << "|2 Delta + i gamma| = " << std::hypot(2.0 * p.detuning, p.gamma)
      << " = 20 Omega; channel-1 vs effective density rel dev " << worst_dev
      << "; channel-1 plateau " << plateau << " vs " << expect << " (rel "
      << plat_err << ")";
    r.detail = d.str();
  });
}

}  // namespace

std::string AcceptanceReport::json() const {
  Json j;
  j["suite"] = suite;
  j["pass"] = pass;
  Json arr = Json::array();
  for (const auto& r : results) {
    Json c;
    c["criterion"] = r.id;
    c["name"] = r.name;
    c["pass"] = r.pass;
    c["measured"] = r.measured;
    c["tolerance"] = r.tolerance;
    c["detail"] = r.detail;
    c["seconds"] = r.seconds;
    arr.push_back(c);
  }
  j["results"] = arr;
  return j.dump(2) + "\n";
}

std::string AcceptanceReport::text() const {
  std::ostringstream os;
  for (const auto& r : results) {
    os << (r.pass ? "[PASS] " : "[FAIL] ");
    if (r.id > 0) os << "criterion " << r.id << ' ';
    os << r.name << ": measured " << r.measured << " (tol " << r.tolerance
       << ", " << r.seconds << " s) " << r.detail << '\n';
  }
  os << "suite " << suite << ": " << (pass ? "PASS" : "FAIL") << '\n';
  return os.str();
}

AcceptanceReport run_acceptance(const std::string& suite,
                                const std::string& work_dir) {
  AcceptanceReport rep;
  rep.suite = suite;
  if (suite == "special_functions") {
    suite_special_functions(rep);
  } else if (suite == "source_exact") {
    suite_source_exact(rep);
  } else if (suite == "features") {
    suite_features(rep, work_dir);
  } else if (suite == "grid") {
    suite_grid(rep);
  } else if (suite == "cross_validation") {
    suite_cross_validation(rep);
  } else if (suite == "all") {
    suite_special_functions(rep);
    suite_source_exact(rep);
    suite_features(rep, work_dir);
    suite_grid(rep);
    suite_cross_validation(rep);
  } else {
    throw std::invalid_argument("unknown acceptance suite '" + suite + "'");
  }
  return rep;
}

}  // namespace absorb
