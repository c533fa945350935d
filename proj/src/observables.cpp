#include "dnls/observables.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace dnls {

namespace {

// Zero-pad onto a grid with pad times the points (literal wavenumbers).
Field resample(const Field& f, int factor) {
  GridPtr big = make_grid(f.grid()->n_points() * factor);
  Field out = Field::zero(big);
  auto ks = f.grid()->wavenumbers();
  auto src = f.coeffs();
  for (std::size_t j = 0; j < src.size(); ++j) {
    out.coeffs()[big->index_of(ks[j])] = src[j];
  }
  return out;
}

double energy_quadrature(const Field& u) {
  Field ux = apply_multiplier(u, MultiplierSymbol::derivative());
  auto us = to_physical(u);
  auto uxs = to_physical(ux);
  double acc = 0.0;
  for (std::size_t j = 0; j < us.size(); ++j) {
    const double amp2 = std::norm(us[j]);
    const cplx cubic = amp2 * us[j] * std::conj(uxs[j]);
    acc += std::norm(uxs[j]) + 1.5 * cubic.imag() + 0.5 * amp2 * amp2 * amp2;
  }
  return two_pi * acc / static_cast<double>(us.size());
}

}  // namespace

double mass(const Field& u) {
  double acc = 0.0;
  for (const cplx& c : u.coeffs()) acc += std::norm(c);
  return two_pi * acc;
}

double energy(const Field& u, bool padded_quadrature) {
  if (!padded_quadrature) return energy_quadrature(u);
  // |u|^6 reaches frequency 3n; 4n quadrature points integrate it exactly.
  return energy_quadrature(resample(u, 4));
}

double hs_distance(const Field& f, const Field& g, double s) {
  require_same_grid(f, g, "hs_distance");
  return sobolev_norm(f - g, s);
}

double relative_error(double q, double q0) {
  return std::abs(q - q0) / std::max(std::abs(q0), 1e-30);
}

ObservableSeries conservation_series(const Trajectory& traj,
                                     bool padded_quadrature) {
  if (traj.states.empty()) {
    throw std::invalid_argument(
        "conservation_series needs at least one recorded state");
  }
  ObservableSeries out;
  out.times = traj.times;
  out.mass.reserve(traj.states.size());
  out.energy.reserve(traj.states.size());
  for (const Field& u : traj.states) {
    out.mass.push_back(mass(u));
    out.energy.push_back(energy(u, padded_quadrature));
  }
  out.rel_mass_err.reserve(out.mass.size());
  out.rel_energy_err.reserve(out.energy.size());
  for (std::size_t i = 0; i < out.mass.size(); ++i) {
    out.rel_mass_err.push_back(relative_error(out.mass[i], out.mass[0]));
    out.rel_energy_err.push_back(relative_error(out.energy[i], out.energy[0]));
  }
  return out;
}

}  // namespace dnls
