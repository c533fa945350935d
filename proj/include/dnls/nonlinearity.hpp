#pragma once

// Right-hand side of the gauged dNLS equation
//   i v_t + v_xx = -i v^2 conj(v)_x - 1/2 |v|^4 v + mu |v|^2 v - psi(v) v
// split into the four terms the integrators treat separately, together with
// the resonance kernels that arise from integrating the derivative term
// against the free flow over one time step.

#include "dnls/spectral.hpp"

namespace dnls {

/// The four summands of the transformed nonlinearity F(v) = F1 + F2 + F3 + F4
/// written as a Duhamel right-hand side (so each term is dv/dt-shaped):
///   F1 = -v^2 conj(v)_x,  F2 = (i/2) |v|^4 v,
///   F3 = -i mu |v|^2 v,   F4 = i psi(v) v.
struct NonlinearTerms {
  Field deriv_cubic;
  Field quintic;
  Field mean_cubic;
  Field phase_term;
  double phase_rate = 0.0;

  Field total() const {
    return deriv_cubic + quintic + mean_cubic + phase_term;
  }
};

/// The real phase rate
///   psi(v) = Pi_0( 2 Im(conj(v)_x v) - 1/2 |v|^4 ) + mu^2
///          = -2 sum_k k |v_k|^2 - 1/2 sum_k |w_k|^2 + mu^2,  w = |v|^2,
/// evaluated from the Fourier sums (real by construction).
double phase_rate(const Field& v, double mu, bool dealias = false);

/// All four nonlinear terms at once.
NonlinearTerms nonlinear_rhs(const Field& v, double mu, bool dealias = false);

/// Mean of the cubic derivative term, Pi_0( v^2 conj(v)_x ).
cplx mean_cubic_flux(const Field& v, bool dealias = false);

/// Two-argument resonance kernel
///   g0(v1, v2, tau) = (I - Pi_0)[ e^{-i tau dxx}( (e^{-i tau dxx} conj(v1))
///                                 * e^{i tau dxx} v2^2 ) - conj(v1) v2^2 ].
/// Mode by mode this multiplies each Fourier triad of conj(v1) v2^2 by
/// e^{i tau (k^2 + k1^2 - (k2 + k3)^2)} - 1 and drops the mean.
Field resonance_kernel(const Field& v1, const Field& v2, double tau,
                       bool dealias = false);

/// One-argument version g1(v, tau) = g0(v, v, tau).
Field resonance_kernel(const Field& v, double tau, bool dealias = false);

/// Antisymmetrised kernel g2(v, tau) = g1(v, tau) - g1(v, -tau) used by the
/// symmetric two-step scheme.
Field resonance_kernel_antisym(const Field& v, double tau,
                               bool dealias = false);

/// Reference evaluation of g0 by explicit summation over Fourier triads
/// -k1 + k2 + k3 = k (k != 0, k resolved on the grid), each weighted by
/// -2 i k k1 tau * phi1(-2 i tau k k1); this is the exact one-step integral
/// of the oscillatory phase.  O(n^3) work, so grids above 64 points are
/// rejected.  Unlike the collocation evaluation it involves no cyclic
/// aliasing, hence the two agree only on inputs whose triads stay in band.
Field resonance_kernel_quadrature(const Field& v1, const Field& v2,
                                  double tau);

}  // namespace dnls
