#pragma once

// Gauge transformation that removes the derivative part of the dNLS
// nonlinearity.  For u solving  i u_t + u_xx = -i (|u|^2 u)_x  the gauged
// variable is  v(t) = G(u)(t) = tau_{-mu t}( e^{-i I(u(t))} u(t) )  where
// I(f) is the zero-mean antiderivative of |f|^2 - mu, mu is the conserved
// mean intensity of the initial datum and tau_c translates x -> x + 2 c t
// in Fourier space.

#include "dnls/spectral.hpp"

namespace dnls {

/// Parameters the time-dependent gauge needs besides the field itself:
/// the conserved mean intensity mu of the initial datum and the time t.
struct GaugeContext {
  double mu = 0.0;
  double t = 0.0;
};

/// Mean intensity mu(f) = Pi_0 |f|^2 = sum_k |c_k|^2 (Parseval), a real
/// number >= 0.
double mean_intensity(const Field& f);

/// Zero-mean antiderivative I(f) of |f|^2 - mu(f): in Fourier space
/// h_k / (i k) for k != 0 and 0 at k = 0, where h = |f|^2.  The unmatched
/// Nyquist cosine has an antiderivative that vanishes at every grid node,
/// so its slot is zeroed; this keeps I(f) real-valued.
Field phase_primitive(const Field& f, bool dealias = false);

/// Time-zero gauge G_0(f) = e^{-i I(f)} f.  Preserves |f| pointwise.
Field gauge_forward(const Field& f, bool dealias = false);

/// Galilean-type translation tau_c at time t: multiplies the coefficient of
/// mode k by e^{i 2 c t k} (a shift of x by 2 c t).
Field translate(const Field& f, double c, double t);

/// Full gauge at time t: tau_{-mu} applied to G_0(f).
Field gauge_at_time(const Field& f, const GaugeContext& ctx,
                    bool dealias = false);

/// Inverse gauge: undo the translation, then multiply by e^{+i I} built
/// from the translated field.  Exact inverse of gauge_at_time up to
/// roundoff.
Field gauge_inverse(const Field& v, const GaugeContext& ctx,
                    bool dealias = false);

}  // namespace dnls
