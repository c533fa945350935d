#pragma once

// Conserved quantities of the dNLS flow and error measures built on them.

#include <vector>

#include "dnls/integrators.hpp"
#include "dnls/spectral.hpp"

namespace dnls {

/// Mass M(u) = int |u|^2 dx = 2*pi * sum_k |u_k|^2.
double mass(const Field& u);

/// Energy
///   E(u) = int |u_x|^2 + (3/2) Im(|u|^2 u conj(u)_x) + (1/2) |u|^6 dx,
/// evaluated by trapezoidal quadrature (exact for trigonometric polynomials
/// resolved by the quadrature grid).  With padded_quadrature the field is
/// zero-padded onto a 4n grid first, so the sextic term (modes up to 3n)
/// is integrated exactly as well.
double energy(const Field& u, bool padded_quadrature = false);

/// H^s distance ||f - g||_{H^s}.
double hs_distance(const Field& f, const Field& g, double s);

/// |q - q0| / max(|q0|, 1e-30).
double relative_error(double q, double q0);

/// Mass/energy sampled along a trajectory with drifts relative to the
/// initial values.
struct ObservableSeries {
  std::vector<double> times;
  std::vector<double> mass;
  std::vector<double> energy;
  std::vector<double> rel_mass_err;
  std::vector<double> rel_energy_err;
};

/// Evaluate both invariants on every recorded state.  Throws
/// std::invalid_argument on an empty trajectory.
ObservableSeries conservation_series(const Trajectory& traj,
                                     bool padded_quadrature = false);

}  // namespace dnls
