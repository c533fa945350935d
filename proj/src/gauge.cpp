#include "dnls/gauge.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace dnls {

double mean_intensity(const Field& f) {
  double acc = 0.0;
  for (const cplx& c : f.coeffs()) acc += std::norm(c);
  return acc;
}

Field phase_primitive(const Field& f, bool dealias) {
  // h = |f|^2; its mean never survives the 1/(i k) weight, so subtracting
  // mu(f) explicitly is unnecessary.
  Field h = pointwise_product(f, conj_field(f), dealias);
  Field primitive = inv_derivative(h);
  // For real h the coefficients of the primitive pair up Hermitian except at
  // the Nyquist mode.  That mode represents c * cos(n x / 2); its primitive
  // (2 c / n) sin(n x / 2) vanishes at every node x_j = 2 pi j / n, so the
  // slot is dropped rather than left as a spurious imaginary residue.
  const int n = f.grid()->n_points();
  primitive.coeffs()[static_cast<std::size_t>(n / 2)] = cplx(0.0, 0.0);
  return primitive;
}

namespace {

// e^{sign * i * I(f)} * g, evaluated at the collocation nodes.  I(f) is real
// so the exponential has modulus one; any roundoff-level imaginary part of
// the primitive is ignored.
Field phase_rotate(const Field& phase, const Field& g, double sign) {
  auto theta = to_physical(phase);
  auto samples = to_physical(g);
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const double p = sign * theta[j].real();
    samples[j] *= cplx(std::cos(p), std::sin(p));
  }
  return to_spectral(samples, g.grid());
}

}  // namespace

Field gauge_forward(const Field& f, bool dealias) {
  return phase_rotate(phase_primitive(f, dealias), f, -1.0);
}

Field translate(const Field& f, double c, double t) {
  const double a = 2.0 * c * t;
  return apply_multiplier(f, MultiplierSymbol([a](int k) {
                            const double phase = a * static_cast<double>(k);
                            return cplx(std::cos(phase), std::sin(phase));
                          }));
}

Field gauge_at_time(const Field& f, const GaugeContext& ctx, bool dealias) {
  return translate(gauge_forward(f, dealias), -ctx.mu, ctx.t);
}

Field gauge_inverse(const Field& v, const GaugeContext& ctx, bool dealias) {
  Field w = translate(v, ctx.mu, ctx.t);
  return phase_rotate(phase_primitive(w, dealias), w, +1.0);
}

}  // namespace dnls
