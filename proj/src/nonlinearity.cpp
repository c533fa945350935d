#include "dnls/nonlinearity.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dnls {

namespace {

// psi(v) with the intensity w = |v|^2 already in hand.
double phase_rate_with(const Field& v, const Field& intensity, double mu) {
  auto ks = v.grid()->wavenumbers();
  auto vc = v.coeffs();
  double momentum = 0.0;
  for (std::size_t j = 0; j < vc.size(); ++j) {
    momentum += static_cast<double>(ks[j]) * std::norm(vc[j]);
  }
  double quartic = 0.0;
  for (const cplx& c : intensity.coeffs()) quartic += std::norm(c);
  return -2.0 * momentum - 0.5 * quartic + mu * mu;
}

}  // namespace

double phase_rate(const Field& v, double mu, bool dealias) {
  Field intensity = pointwise_product(v, conj_field(v), dealias);
  return phase_rate_with(v, intensity, mu);
}

NonlinearTerms nonlinear_rhs(const Field& v, double mu, bool dealias) {
  const cplx iu(0.0, 1.0);
  Field vbar = conj_field(v);
  Field vbar_x = apply_multiplier(vbar, MultiplierSymbol::derivative());
  Field vsq = pointwise_product(v, v, dealias);
  Field intensity = pointwise_product(v, vbar, dealias);
  Field quartic = pointwise_product(intensity, intensity, dealias);

  Field deriv_cubic = cplx(-1.0, 0.0) * pointwise_product(vsq, vbar_x, dealias);
  Field quintic = (0.5 * iu) * pointwise_product(quartic, v, dealias);
  Field mean_cubic = (-iu * mu) * pointwise_product(intensity, v, dealias);
  const double psi = phase_rate_with(v, intensity, mu);
  Field phase_term = (iu * psi) * v;

  return NonlinearTerms{std::move(deriv_cubic), std::move(quintic),
                        std::move(mean_cubic), std::move(phase_term), psi};
}

cplx mean_cubic_flux(const Field& v, bool dealias) {
  Field vsq = pointwise_product(v, v, dealias);
  Field vbar_x =
      apply_multiplier(conj_field(v), MultiplierSymbol::derivative());
  return mean_mode(pointwise_product(vsq, vbar_x, dealias));
}

Field resonance_kernel(const Field& v1, const Field& v2, double tau,
                       bool dealias) {
  require_same_grid(v1, v2, "resonance_kernel");
  Field vbar1 = conj_field(v1);
  Field v2sq = pointwise_product(v2, v2, dealias);
  // e^{-i tau dxx} f is the free flow evaluated at time -tau.
  Field inner = pointwise_product(
      apply_multiplier(vbar1, MultiplierSymbol::free_flow(-tau)),
      apply_multiplier(v2sq, MultiplierSymbol::free_flow(tau)), dealias);
  Field oscillated =
      apply_multiplier(inner, MultiplierSymbol::free_flow(-tau));
  Field plain = pointwise_product(vbar1, v2sq, dealias);
  return project_out_mean(oscillated - plain);
}

Field resonance_kernel(const Field& v, double tau, bool dealias) {
  return resonance_kernel(v, v, tau, dealias);
}

Field resonance_kernel_antisym(const Field& v, double tau, bool dealias) {
  return resonance_kernel(v, tau, dealias) -
         resonance_kernel(v, -tau, dealias);
}

Field resonance_kernel_quadrature(const Field& v1, const Field& v2,
                                  double tau) {
  require_same_grid(v1, v2, "resonance_kernel_quadrature");
  const auto* grid = v1.grid().get();
  const int n = grid->n_points();
  if (n > 64) {
    throw std::invalid_argument(
        "resonance_kernel_quadrature is O(n^3); refusing n = " +
        std::to_string(n) + " > 64");
  }
  auto ks = grid->wavenumbers();
  auto c1 = v1.coeffs();
  auto c2 = v2.coeffs();
  Field out = Field::zero(v1.grid());
  auto dst = out.coeffs();
  const int lo = -n / 2;
  const int hi = n / 2 - 1;
  for (std::size_t j1 = 0; j1 < c1.size(); ++j1) {
    const int k1 = ks[j1];
    const cplx a1 = std::conj(c1[j1]);
    if (a1 == cplx(0.0, 0.0)) continue;
    for (std::size_t j2 = 0; j2 < c2.size(); ++j2) {
      const int k2 = ks[j2];
      const cplx a12 = a1 * c2[j2];
      for (std::size_t j3 = 0; j3 < c2.size(); ++j3) {
        const int k3 = ks[j3];
        const int k = -k1 + k2 + k3;
        // Only triads landing on a resolved nonzero mode contribute; the
        // collocation evaluation is compared on band-limited inputs where
        // no admissible triad leaves the band.
        if (k == 0 || k < lo || k > hi) continue;
        const double alpha = -2.0 * static_cast<double>(k) * k1;
        const cplx weight =
            cplx(0.0, alpha) * tau * phi1(cplx(0.0, tau * alpha));
        dst[grid->index_of(k)] += weight * a12 * c2[j3];
      }
    }
  }
  return out;
}

}  // namespace dnls
