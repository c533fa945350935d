#pragma once

// Shared helpers for the test suites: deterministic random fields and
// independent reference evaluations (true-triad convolutions, padded
// quadrature) that the FFT-based implementations are checked against.
//
// The collocation product is a cyclic convolution: any product mode beyond
// the resolved band folds back onto band modulo n.  The convolution oracles
// below sum true triads only, so equivalence tests must feed them
// band-limited inputs — max mode K with 3K inside the band for cubic terms
// and 5K for quintic ones.  On such inputs both evaluations are exact and
// must agree to near machine precision.

#include <cstdint>
#include <vector>

#include "dnls/gauge.hpp"
#include "dnls/nonlinearity.hpp"
#include "dnls/spectral.hpp"

namespace testutil {

using dnls::cplx;
using dnls::Field;
using dnls::GridPtr;

// SplitMix64, kept separate from the library's generator so test inputs do
// not depend on library internals.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [-1, 1).
  double pm1() {
    return 2.0 * (static_cast<double>(next() >> 11) * 0x1.0p-53) - 1.0;
  }

  cplx unit_box() { return cplx(pm1(), pm1()); }
};

// Random field supported on |k| <= kmax only.
inline Field random_band_limited(const GridPtr& grid, int kmax,
                                 std::uint64_t seed) {
  Rng rng(seed);
  Field f = Field::zero(grid);
  for (int k = -kmax; k <= kmax; ++k) {
    f.set_coeff(k, rng.unit_box());
  }
  return f;
}

// Random field on every mode except the Nyquist slot, with an algebraic
// amplitude envelope <k>^{-decay}.
inline Field random_full(const GridPtr& grid, std::uint64_t seed,
                         double decay) {
  Rng rng(seed);
  Field f = Field::zero(grid);
  const int n = grid->n_points();
  for (int k = -n / 2 + 1; k <= n / 2 - 1; ++k) {
    const double amp =
        std::pow(1.0 + static_cast<double>(k) * k, -0.5 * decay);
    f.set_coeff(k, amp * rng.unit_box());
  }
  return f;
}

// True (non-cyclic) convolution (a * b)_k = sum_{k1 + k2 = k} a_{k1} b_{k2},
// truncated to the resolved band.  Exact whenever the true product fits the
// band; otherwise it simply drops what the collocation product would fold.
inline Field conv_trunc(const Field& a, const Field& b) {
  dnls::require_same_grid(a, b, "conv_trunc");
  const auto* grid = a.grid().get();
  const int n = grid->n_points();
  Field out = Field::zero(a.grid());
  auto ks = grid->wavenumbers();
  for (std::size_t j1 = 0; j1 < a.size(); ++j1) {
    const cplx c1 = a.coeffs()[j1];
    if (c1 == cplx(0.0, 0.0)) continue;
    for (std::size_t j2 = 0; j2 < b.size(); ++j2) {
      const int k = ks[j1] + ks[j2];
      if (k < -n / 2 || k > n / 2 - 1) continue;
      out.coeffs()[grid->index_of(k)] += c1 * b.coeffs()[j2];
    }
  }
  return out;
}

inline Field derivative_of(const Field& f) {
  return apply_multiplier(f, dnls::MultiplierSymbol::derivative());
}

// -v^2 conj(v)_x by staged true convolutions.
inline Field oracle_deriv_cubic(const Field& v) {
  Field vsq = conv_trunc(v, v);
  Field vbar_x = derivative_of(conj_field(v));
  return cplx(-1.0, 0.0) * conv_trunc(vsq, vbar_x);
}

// (i/2) |v|^4 v by staged true convolutions.
inline Field oracle_quintic(const Field& v) {
  Field intensity = conv_trunc(v, conj_field(v));
  Field quartic = conv_trunc(intensity, intensity);
  return cplx(0.0, 0.5) * conv_trunc(quartic, v);
}

// -i mu |v|^2 v by staged true convolutions.
inline Field oracle_mean_cubic(const Field& v, double mu) {
  Field intensity = conv_trunc(v, conj_field(v));
  return cplx(0.0, -mu) * conv_trunc(intensity, v);
}

// Pi_0(v^2 conj(v)_x) as a true triad sum.
inline cplx oracle_mean_cubic_flux(const Field& v) {
  Field vsq = conv_trunc(v, v);
  return mean_mode(conv_trunc(vsq, derivative_of(conj_field(v))));
}

// psi(v) by trapezoidal quadrature of 2 Im(conj(v)_x v) - |v|^4 / 2 on a
// four-fold padded grid (exact for any band-limited v), plus mu^2.
inline double oracle_phase_rate(const Field& v, double mu) {
  const int n = v.grid()->n_points();
  GridPtr big = dnls::make_grid(4 * n);
  Field vb = Field::zero(big);
  auto ks = v.grid()->wavenumbers();
  for (std::size_t j = 0; j < v.size(); ++j) {
    vb.coeffs()[big->index_of(ks[j])] = v.coeffs()[j];
  }
  auto vs = to_physical(vb);
  auto vxs = to_physical(derivative_of(vb));
  double acc = 0.0;
  for (std::size_t j = 0; j < vs.size(); ++j) {
    const cplx cross = std::conj(vxs[j]) * vs[j];
    const double amp2 = std::norm(vs[j]);
    acc += 2.0 * cross.imag() - 0.5 * amp2 * amp2;
  }
  return acc / static_cast<double>(vs.size()) + mu * mu;
}

inline Field plane_wave(const GridPtr& grid, cplx amplitude, int k) {
  Field f = Field::zero(grid);
  f.set_coeff(k, amplitude);
  return f;
}

// Exact dNLS solution a e^{i(k x + omega t)} with omega = k |a|^2 - k^2.
inline Field plane_wave_solution(const GridPtr& grid, double a, int k,
                                 double t) {
  const double omega =
      static_cast<double>(k) * a * a - static_cast<double>(k) * k;
  return plane_wave(grid, a * cplx(std::cos(omega * t), std::sin(omega * t)),
                    k);
}

inline double max_coeff_diff(const Field& f, const Field& g) {
  dnls::require_same_grid(f, g, "max_coeff_diff");
  double m = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    m = std::max(m, std::abs(f.coeffs()[j] - g.coeffs()[j]));
  }
  return m;
}

inline double max_abs_coeff(const Field& f) {
  double m = 0.0;
  for (const cplx& c : f.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace testutil
