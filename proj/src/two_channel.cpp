#include "absorb/two_channel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <numbers>
#include <stdexcept>

namespace absorb {

namespace {

const Complex kI(0.0, 1.0);

// 2x2 complex matrix in row-major order {a00, a01, a10, a11}.
using Mat2 = std::array<Complex, 4>;

Mat2 inverse(const Mat2& m) {
  const Complex det = m[0] * m[3] - m[1] * m[2];
  const Complex r = 1.0 / det;
  return {m[3] * r, -m[1] * r, -m[2] * r, m[0] * r};
}

struct Vec2 {
  Complex a, b;
};

Vec2 mul(const Mat2& m, const Vec2& v) {
  return {m[0] * v.a + m[1] * v.b, m[2] * v.a + m[3] * v.b};
}

}  // namespace

bool TwoChannelParams::large_detuning() const {
  return std::hypot(2.0 * detuning, gamma) > 10.0 * omega_rabi;
}

EffectivePotential effective_potential(const TwoChannelParams& p) {
  const double denom = 4.0 * p.detuning * p.detuning + p.gamma * p.gamma;
  if (denom == 0.0) {
    throw std::invalid_argument("effective_potential: Delta = gamma = 0");
  }
  EffectivePotential v;
  v.v_real = p.hbar * p.detuning * p.omega_rabi * p.omega_rabi / denom;
  v.v_imag = p.hbar * p.gamma * p.omega_rabi * p.omega_rabi / 2.0 / denom;
  return v;
}

std::pair<MediumParams, ScaleMap> reduce_to_effective(const TwoChannelParams& p) {
  if (!p.large_detuning()) {
    throw std::invalid_argument(
        "reduce_to_effective: outside the large-detuning regime");
  }
  const EffectivePotential v = effective_potential(p);
  if (!(v.v_real > 0.0)) {
    throw std::invalid_argument(
        "reduce_to_effective: non-positive real part (wrong detuning sign); "
        "no reduction with cutoff = +1 exists");
  }
  MediumParams m;
  m.cutoff = 1.0;
  m.v1 = v.v_imag / v.v_real;
  // Units with hbar = 2m = 1 and Re(V) = 1: energies scale by v_real.
  ScaleMap map;
  map.time_unit = p.hbar / v.v_real;
  map.length_unit = p.hbar / std::sqrt(2.0 * p.mass * v.v_real);
  return {m, map};
}

std::string TwoChannelRun::manifest_json() const {
  nlohmann::json j = nlohmann::json::parse(ch1.manifest_json());
  j["channels"] = 2;
  j["regime_warning"] = regime_warning;
  return j.dump(2);
}

TwoChannelRun two_channel_evolve(const TwoChannelParams& p,
                                 const GridConfig& g) {
  if (p.omega_rabi < 0.0 || p.gamma < 0.0 || !(p.hbar > 0.0) ||
      !(p.mass > 0.0)) {
    throw std::invalid_argument("two_channel_evolve: bad physical parameters");
  }
  const std::vector<double> xs = grid_points(g);
  const int n = static_cast<int>(xs.size());
  const long nsteps = std::llround(g.t_max / g.dt);

  TwoChannelRun run;
  run.regime_warning = !p.large_detuning();
  run.ch1.config = run.ch2.config = g;
  run.ch1.scheme = run.ch2.scheme =
      "trapezoidal-implicit, 3-point Laplacian, 2x2 block (order 2,2)";

  std::vector<Complex> psi1 = truncated_plane_wave(g, p.k0_dimensional);
  std::vector<Complex> psi2(n, Complex(0.0, 0.0));

  // Per-point Hamiltonian blocks. kappa is the kinetic diagonal; the spatial
  // off-diagonal is the scalar beta = -hbar^2/(2m dx^2) on both channels.
  const double kappa = p.hbar * p.hbar / (p.mass * g.dx * g.dx);  // 2 * beta
  const Complex lam = kI * g.dt / (2.0 * p.hbar);
  const Complex alpha = lam * (-0.5 * kappa);  // off-diagonal of A
  const Complex d2 = p.hbar * Complex(-2.0 * p.detuning, -p.gamma) / 2.0;

  std::vector<Mat2> dblock(n), bblock(n), sinv(n);
  std::vector<double> gam1(n), gam2(n);
  bool dissipative = false;
  for (int j = 0; j < n; ++j) {
    const double layer = absorbing_gamma(g, xs[j]);
    const Complex w = xs[j] > 0.0 ? Complex(p.hbar * p.omega_rabi / 2.0, 0.0)
                                  : Complex(0.0, 0.0);
    const Complex h11 = kappa - kI * layer;
    const Complex h22 = kappa + d2 - kI * layer;
    dblock[j] = {1.0 + lam * h11, lam * w, lam * w, 1.0 + lam * h22};
    bblock[j] = {1.0 - lam * h11, -lam * w, -lam * w, 1.0 - lam * h22};
    gam1[j] = layer;
    gam2[j] = p.hbar * p.gamma / 2.0 + layer;
    if (gam1[j] > 0.0 || gam2[j] > 0.0) dissipative = true;
    if (layer < 0.0) {
      throw std::invalid_argument("two_channel_evolve: gain layer");
    }
  }

  // Cached block-Thomas factorization: S_j = D_j - alpha^2 S_{j-1}^{-1}.
  sinv[0] = inverse(dblock[0]);
  for (int j = 1; j < n; ++j) {
    const Complex a2 = alpha * alpha;
    Mat2 s = dblock[j];
    s[0] -= a2 * sinv[j - 1][0];
    s[1] -= a2 * sinv[j - 1][1];
    s[2] -= a2 * sinv[j - 1][2];
    s[3] -= a2 * sinv[j - 1][3];
    sinv[j] = inverse(s);
  }

  std::vector<int> probe_idx;
  for (double pr : g.probes) {
    int j = static_cast<int>(std::llround((pr - g.x_min) / g.dx - 0.5));
    j = std::clamp(j, 0, n - 1);
    probe_idx.push_back(j);
    run.ch1.probe_x.push_back(xs[j]);
    run.ch2.probe_x.push_back(xs[j]);
  }
  run.ch1.probe_psi.assign(probe_idx.size(), {});
  run.ch2.probe_psi.assign(probe_idx.size(), {});

  std::vector<long> snap_steps;
  const int ns = std::max(2, g.n_snapshots);
  for (int i = 0; i < ns; ++i) {
    snap_steps.push_back(std::llround(static_cast<double>(i) * nsteps /
                                      (ns - 1)));
  }
  for (GridRun* r : {&run.ch1, &run.ch2}) {
    r->snapshots.provenance = Provenance::grid;
    r->snapshots.x_samples = xs;
  }

  RunAudit& audit = run.ch1.audit;
  audit.dissipation_active = dissipative;
  auto norm_of = [&] {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += std::norm(psi1[j]) + std::norm(psi2[j]);
    return s * g.dx;
  };
  double norm = norm_of();
  audit.norm_initial = norm;
  audit.max_step_growth = -std::numeric_limits<double>::infinity();

  auto record = [&](long step) {
    if (step % g.probe_stride == 0 || step == nsteps) {
      run.ch1.probe_t.push_back(step * g.dt);
      run.ch2.probe_t.push_back(step * g.dt);
      for (std::size_t ip = 0; ip < probe_idx.size(); ++ip) {
        run.ch1.probe_psi[ip].push_back(psi1[probe_idx[ip]]);
        run.ch2.probe_psi[ip].push_back(psi2[probe_idx[ip]]);
      }
    }
    if (std::binary_search(snap_steps.begin(), snap_steps.end(), step)) {
      for (auto [r, v] : {std::pair{&run.ch1, &psi1}, {&run.ch2, &psi2}}) {
        r->snapshots.t_samples.push_back(step * g.dt);
        r->snapshots.values.insert(r->snapshots.values.end(), v->begin(),
                                   v->end());
      }
    }
  };
  record(0);

  std::vector<Complex> p1 = psi1, p2 = psi2;
  std::vector<Vec2> rhs(n), y(n);
  for (long step = 1; step <= nsteps; ++step) {
    p1.swap(psi1);
    p2.swap(psi2);
    // rhs = B psi_old (spatial off-diagonal is -alpha on both channels)
    for (int j = 0; j < n; ++j) {
      Vec2 v = mul(bblock[j], {p1[j], p2[j]});
      if (j > 0) {
        v.a -= alpha * p1[j - 1];
        v.b -= alpha * p2[j - 1];
      }
      if (j + 1 < n) {
        v.a -= alpha * p1[j + 1];
        v.b -= alpha * p2[j + 1];
      }
      rhs[j] = v;
    }
    y[0] = mul(sinv[0], rhs[0]);
    for (int j = 1; j < n; ++j) {
      y[j] = mul(sinv[j],
                 {rhs[j].a - alpha * y[j - 1].a, rhs[j].b - alpha * y[j - 1].b});
    }
    psi1[n - 1] = y[n - 1].a;
    psi2[n - 1] = y[n - 1].b;
    for (int j = n - 2; j >= 0; --j) {
      const Vec2 c = mul(sinv[j], {alpha * psi1[j + 1], alpha * psi2[j + 1]});
      psi1[j] = y[j].a - c.a;
      psi2[j] = y[j].b - c.b;
    }

    // Exact discrete identity for the trapezoidal step:
    // ||psi_new||^2 - ||psi_old||^2 = -(2 dt/hbar) <mid|Gamma|mid>.
    double norm_new = 0.0, loss_pred = 0.0;
    for (int j = 0; j < n; ++j) {
      norm_new += std::norm(psi1[j]) + std::norm(psi2[j]);
      if (gam1[j] != 0.0) {
        loss_pred += gam1[j] * std::norm(0.5 * (p1[j] + psi1[j]));
      }
      if (gam2[j] != 0.0) {
        loss_pred += gam2[j] * std::norm(0.5 * (p2[j] + psi2[j]));
      }
    }
    norm_new *= g.dx;
    loss_pred *= 2.0 * g.dt / p.hbar * g.dx;
    const double dn = norm_new - norm;
    audit.max_step_growth = std::max(audit.max_step_growth, dn);
    if (dissipative) {
      if (dn > 1e-12 * norm) audit.norm_monotone = false;
      if (dn > 1e-9 * norm) {
        throw std::runtime_error("two_channel_evolve: stability audit failed "
                                 "(norm grew with dissipation on)");
      }
      const double measured = -dn;
      if (measured > 1e-12 * norm) {
        audit.max_bookkeeping_err =
            std::max(audit.max_bookkeeping_err,
                     std::fabs(measured - loss_pred) / measured);
      }
    } else {
      audit.max_drift_per_step =
          std::max(audit.max_drift_per_step, std::fabs(dn) / norm);
    }
    norm = norm_new;
    record(step);
  }
  audit.norm_final = norm;

  const double k_cut = g.band_limit_k2 > 0.0 ? g.band_limit_k2
                                             : std::numbers::pi / g.dx;
  const double v_max = p.hbar * k_cut / p.mass;
  double t_reflect = std::numeric_limits<double>::infinity();
  for (double pr : run.ch1.probe_x) {
    t_reflect = std::min(t_reflect, (2.0 * g.x_max - pr) / v_max);
  }
  audit.reflection_time_estimate = t_reflect;
  audit.reflection_warning =
      g.edge == EdgeTreatment::hard_wall && t_reflect < g.t_max;
  run.ch2.audit = audit;
  return run;
}

}  // namespace absorb
