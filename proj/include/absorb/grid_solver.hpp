#pragma once

#include <string>
#include <vector>

#include "absorb/field.hpp"
#include "absorb/source_model.hpp"

namespace absorb {

enum class EdgeTreatment { hard_wall, absorbing_layer };

// Finite-difference run configuration. The domain is discretized with the
// potential step midway between two grid points: x_j = x_min + (j + 0.5) dx.
struct GridConfig {
  double x_min = -40.0;
  double x_max = 40.0;
  double dx = 0.02;
  double dt = 2e-4;
  double t_max = 10.0;
  EdgeTreatment edge = EdgeTreatment::absorbing_layer;
  double layer_width = 60.0;
  double layer_strength = 8.0;
  // Initial-state spectral taper: components below k1 kept, above k2 removed,
  // cos^2 roll-off between. 0 disables the taper.
  double band_limit_k1 = 0.0;
  double band_limit_k2 = 0.0;
  double ramp_width = 10.0;  // smoothing of the truncated left edge
  std::vector<double> probes;
  int probe_stride = 1;   // record probes every this many steps
  int n_snapshots = 3;    // full-field snapshots spread over [0, t_max]
};

struct RunAudit {
  double norm_initial = 0.0;
  double norm_final = 0.0;
  double max_step_growth = 0.0;      // most positive per-step norm change
  double max_drift_per_step = 0.0;   // |norm change| / norm, dissipation off
  double max_bookkeeping_err = 0.0;  // step loss vs -2 dt <mid|Gamma|mid>
  bool norm_monotone = true;
  double reflection_time_estimate = 0.0;
  bool reflection_warning = false;
  bool dissipation_active = false;
};

struct GridRun {
  ComplexField snapshots;  // provenance = grid
  std::vector<double> probe_x;  // grid-aligned probe positions
  std::vector<double> probe_t;
  std::vector<std::vector<Complex>> probe_psi;  // [probe][time index]
  RunAudit audit;
  GridConfig config;
  std::string scheme = "trapezoidal-implicit, 3-point Laplacian (order 2,2)";

  std::vector<double> probe_density(std::size_t ip) const;
  std::string manifest_json() const;
};

// Cell-centered spatial axis x_j = x_min + (j + 0.5) dx.
std::vector<double> grid_points(const GridConfig& g);

// Absorbing-layer strength at position x (0 outside the layers or when the
// edge treatment is hard_wall).
double absorbing_gamma(const GridConfig& g, double x);

// Truncated plane wave e^{i k0 x} Theta(-x) / sqrt(2 pi) sampled on the grid,
// with the left-edge cosine ramp and the spectral taper applied.
std::vector<Complex> truncated_plane_wave(const GridConfig& g, double k0);

// Sudden release of a truncated plane wave e^{i k0 x} Theta(-x) / sqrt(2 pi)
// against the absorbing step (cutoff - i v1) Theta(x).
// Throws std::runtime_error if the norm grows beyond roundoff while
// dissipation is enabled (stability-audit failure).
GridRun shutter_evolve(const MediumParams& m, double k0, const GridConfig& g);

// Same scheme for an arbitrary initial state / complex potential, exposed for
// convergence studies and the two-channel reduction path.
GridRun evolve_custom(const std::vector<Complex>& psi0,
                      const std::vector<Complex>& potential,
                      const GridConfig& g);

}  // namespace absorb
