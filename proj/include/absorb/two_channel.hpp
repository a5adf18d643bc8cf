#pragma once

#include <string>

#include "absorb/grid_solver.hpp"

namespace absorb {

// Two-level atom coupled to a laser occupying x > 0, in the rotating frame.
// Channel 1 (ground) is the observed one; channel 2 carries detuning -2 delta
// and decay -i gamma on its diagonal and is coupled by hbar Omega Theta(x)/2.
struct TwoChannelParams {
  double omega_rabi = 0.0;  // Omega >= 0
  double detuning = 0.0;    // Delta
  double gamma = 0.0;       // inverse lifetime, >= 0
  double hbar = 1.0;
  double mass = 0.5;
  double k0_dimensional = 0.9;

  // |2 Delta + i gamma| > 10 Omega
  bool large_detuning() const;
};

struct EffectivePotential {
  double v_real = 0.0;  // hbar Delta Omega^2 / (4 Delta^2 + gamma^2)
  double v_imag = 0.0;  // hbar gamma Omega^2 / 2 / (4 Delta^2 + gamma^2)
};

// Conversion between the dimensional grid and the reduced units in which
// hbar = 2m = 1 and the real part of the effective potential is the cutoff 1:
// x_reduced = x / length_unit, t_reduced = t / time_unit.
struct ScaleMap {
  double length_unit = 1.0;
  double time_unit = 1.0;
};

EffectivePotential effective_potential(const TwoChannelParams& p);

// Adiabatic elimination of channel 2. Returns the reduced-unit medium
// (cutoff 1, v1 = v_imag/v_real) and the unit map. Throws
// std::invalid_argument outside the large-detuning regime or when
// v_real <= 0 (wrong detuning sign: no cutoff = +1 reduction exists).
std::pair<MediumParams, ScaleMap> reduce_to_effective(const TwoChannelParams& p);

struct TwoChannelRun {
  GridRun ch1;  // carries the shared audit, config and scheme string
  GridRun ch2;
  bool regime_warning = false;  // large-detuning flag false

  std::string manifest_json() const;
};

// Released truncated plane wave in channel 1, empty channel 2, evolved under
// the block Hamiltonian. Grid quantities (x, t, k0_dimensional) are in the
// dimensional units implied by p.hbar/p.mass. Same contract as shutter_evolve:
// throws on stability-audit failure, never on physical norm loss.
TwoChannelRun two_channel_evolve(const TwoChannelParams& p, const GridConfig& g);

}  // namespace absorb
