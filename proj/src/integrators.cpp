#include "dnls/integrators.hpp"

#include <cmath>
#include <cstddef>
#include <utility>

#include "dnls/gauge.hpp"
#include "dnls/nonlinearity.hpp"

namespace dnls {

namespace {

Field free_evolve(const Field& f, double t) {
  return apply_multiplier(f, MultiplierSymbol::free_flow(t));
}

// Bracket of the one-step scheme without the leading v, so that
// step_basic(v, tau) = e^{i tau dxx} (v + N(v, tau)).  Shared with the
// starter, which needs N at negative half steps.
Field one_step_increment(const Field& v, double tau, double mu,
                         const StepOptions& opts) {
  const cplx iu(0.0, 1.0);
  Field acc = cplx(0.0, -0.5) *
              inv_derivative(resonance_kernel(v, tau, opts.dealias));

  Field vbar = conj_field(v);
  Field vsq = pointwise_product(v, v, opts.dealias);
  Field intensity = pointwise_product(v, vbar, opts.dealias);
  Field vbar2v = pointwise_product(intensity, vbar, opts.dealias);

  const MultiplierSymbol dphi = MultiplierSymbol::phi1_dxx(cplx(0.0, -2.0 * tau));
  acc += (0.5 * iu * tau) *
         pointwise_product(vsq, apply_multiplier(vbar2v, dphi), opts.dealias);
  acc -= (iu * (mu * tau)) *
         pointwise_product(vsq, apply_multiplier(vbar, dphi), opts.dealias);
  acc += (iu * (tau * phase_rate(v, mu, opts.dealias))) * v;
  acc.coeffs()[0] -= tau * mean_cubic_flux(v, opts.dealias);
  return acc;
}

// Bracket of the symmetric scheme:
// step_symmetric = e^{2 i tau dxx} v_prev + e^{i tau dxx} M(v, tau).
Field two_step_increment(const Field& v, double tau, double mu,
                         const StepOptions& opts) {
  const cplx iu(0.0, 1.0);
  Field acc = cplx(0.0, -0.5) *
              inv_derivative(resonance_kernel_antisym(v, tau, opts.dealias));

  Field vbar = conj_field(v);
  Field vsq = pointwise_product(v, v, opts.dealias);
  Field intensity = pointwise_product(v, vbar, opts.dealias);
  Field vbar2v = pointwise_product(intensity, vbar, opts.dealias);

  // e^{2 i tau dxx} phi1(-4 i tau dxx) has the single real even symbol
  // sin(2 tau k^2)/(2 tau k^2); evaluating it in one piece keeps the exact
  // tau -> -tau parity the reversibility of the scheme rests on.
  const MultiplierSymbol filter = MultiplierSymbol([tau](int k) {
    const double x = 2.0 * tau * static_cast<double>(k) * k;
    return cplx(sinc(x), 0.0);
  });
  acc += (iu * tau) *
         pointwise_product(vsq, apply_multiplier(vbar2v, filter), opts.dealias);
  acc -= (2.0 * iu * (mu * tau)) *
         pointwise_product(vsq, apply_multiplier(vbar, filter), opts.dealias);
  acc += (2.0 * iu * (tau * phase_rate(v, mu, opts.dealias))) * v;
  acc.coeffs()[0] -= 2.0 * tau * mean_cubic_flux(v, opts.dealias);
  return acc;
}

void check_finite(const Field& v, double t, std::size_t step) {
  for (const cplx& c : v.coeffs()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw BlowupError("state left the finite range", t, step);
    }
  }
}

// Right-hand side of the twisted formulation z' = e^{-i t dxx} F(e^{i t dxx} z).
Field twisted_rhs(const Field& z, double t, double mu,
                  const StepOptions& opts) {
  Field v = free_evolve(z, t);
  return free_evolve(nonlinear_rhs(v, mu, opts.dealias).total(), -t);
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::basic:
      return "basic";
    case Method::symmetric:
      return "symmetric";
    case Method::oracle_rk4:
      return "oracle_rk4";
  }
  throw std::invalid_argument("unknown method enumerator");
}

Method method_from_name(const std::string& name) {
  if (name == "basic") return Method::basic;
  if (name == "symmetric") return Method::symmetric;
  if (name == "oracle_rk4") return Method::oracle_rk4;
  throw std::invalid_argument("unknown method '" + name +
                              "' (expected basic, symmetric or oracle_rk4)");
}

Field step_basic(const Field& v, double tau, double mu,
                 const StepOptions& opts) {
  return free_evolve(v + one_step_increment(v, tau, mu, opts), tau);
}

Field step_symmetric(const Field& v_curr, const Field& v_prev, double tau,
                     double mu, const StepOptions& opts) {
  require_same_grid(v_curr, v_prev, "step_symmetric");
  return free_evolve(v_prev, 2.0 * tau) +
         free_evolve(two_step_increment(v_curr, tau, mu, opts), tau);
}

Field starter(const Field& v0, double tau, double mu, double tol, int max_iter,
              double norm_s, const StepOptions& opts) {
  // v_1 solves Psi^{-tau/2}(v_1) = Psi^{tau/2}(v_0), i.e.
  // v_1 = e^{i (tau/2) dxx} Psi^{tau/2}(v_0) - N(v_1, -tau/2).
  Field target = free_evolve(step_basic(v0, 0.5 * tau, mu, opts), 0.5 * tau);
  Field v1 = target;
  double diff = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    Field next = target - one_step_increment(v1, -0.5 * tau, mu, opts);
    diff = sobolev_norm(next - v1, norm_s);
    v1 = std::move(next);
    if (diff < tol) return v1;
  }
  throw StarterError(diff, max_iter);
}

std::size_t step_count(double tau, double t_end) {
  if (!(tau > 0.0)) {
    throw std::invalid_argument("step size tau must be positive, got " +
                                std::to_string(tau));
  }
  if (!(t_end >= 0.0)) {
    throw std::invalid_argument("t_end must be nonnegative, got " +
                                std::to_string(t_end));
  }
  const double rounded = std::round(t_end / tau);
  if (std::abs(rounded * tau - t_end) >
      1e-9 * std::max(1.0, std::abs(t_end))) {
    throw std::invalid_argument("t_end = " + std::to_string(t_end) +
                                " is not an integer multiple of tau = " +
                                std::to_string(tau));
  }
  return static_cast<std::size_t>(rounded);
}

void integrate(const Field& v0, double tau, std::size_t n_steps, double mu,
               const EvolveOptions& opts, const StateSink& sink) {
  const StepOptions sopts{opts.dealias};
  check_finite(v0, 0.0, 0);
  sink(0, 0.0, v0);
  if (n_steps == 0) return;

  switch (opts.method) {
    case Method::basic: {
      Field v = v0;
      for (std::size_t i = 1; i <= n_steps; ++i) {
        v = step_basic(v, tau, mu, sopts);
        const double t = tau * static_cast<double>(i);
        check_finite(v, t, i);
        sink(i, t, v);
      }
      return;
    }
    case Method::symmetric: {
      Field prev = v0;
      Field curr = starter(v0, tau, mu, opts.starter_tol,
                           opts.starter_max_iter, opts.norm_s, sopts);
      check_finite(curr, tau, 1);
      sink(1, tau, curr);
      for (std::size_t i = 2; i <= n_steps; ++i) {
        Field next = step_symmetric(curr, prev, tau, mu, sopts);
        const double t = tau * static_cast<double>(i);
        check_finite(next, t, i);
        sink(i, t, next);
        prev = std::move(curr);
        curr = std::move(next);
      }
      return;
    }
    case Method::oracle_rk4: {
      Field z = v0;
      const double guard = 10.0 * sobolev_norm(z, 0.0);
      for (std::size_t i = 1; i <= n_steps; ++i) {
        const double t = tau * static_cast<double>(i - 1);
        Field k1 = twisted_rhs(z, t, mu, sopts);
        Field k2 = twisted_rhs(z + (0.5 * tau) * k1, t + 0.5 * tau, mu, sopts);
        Field k3 = twisted_rhs(z + (0.5 * tau) * k2, t + 0.5 * tau, mu, sopts);
        Field k4 = twisted_rhs(z + tau * k3, t + tau, mu, sopts);
        k2 += k3;
        z += (tau / 6.0) * (k1 + 2.0 * k2 + k4);
        const double t_next = tau * static_cast<double>(i);
        check_finite(z, t_next, i);
        if (sobolev_norm(z, 0.0) > guard) {
          throw BlowupError("rk4 reference left its L^2 trust region", t_next,
                            i);
        }
        sink(i, t_next, free_evolve(z, t_next));
      }
      return;
    }
  }
  throw std::invalid_argument("unknown method enumerator");
}

Trajectory evolve(const Field& v0, double tau, double t_end, double mu,
                  const EvolveOptions& opts) {
  const std::size_t n = step_count(tau, t_end);
  const std::size_t stride = opts.stride == 0 ? 1 : opts.stride;
  Trajectory traj;
  traj.meta.method = method_name(opts.method);
  traj.meta.n_points = v0.grid()->n_points();
  traj.meta.tau = tau;
  traj.meta.mu = mu;
  integrate(v0, tau, n, mu, opts,
            [&](std::size_t step, double t, const Field& v) {
              if (step % stride == 0 || step == n) {
                traj.times.push_back(t);
                traj.states.push_back(v);
              }
            });
  return traj;
}

Trajectory oracle_rk4(const Field& v0, double tau, double t_end, double mu,
                      const EvolveOptions& opts) {
  EvolveOptions o = opts;
  o.method = Method::oracle_rk4;
  return evolve(v0, tau, t_end, mu, o);
}

Trajectory solve_dnls(const Field& u0, double tau, double t_end,
                      const EvolveOptions& opts) {
  const double mu = mean_intensity(u0);
  Field v0 = gauge_forward(u0, opts.dealias);
  Trajectory traj = evolve(v0, tau, t_end, mu, opts);
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    traj.states[i] = gauge_inverse(
        traj.states[i], GaugeContext{mu, traj.times[i]}, opts.dealias);
  }
  return traj;
}

}  // namespace dnls
