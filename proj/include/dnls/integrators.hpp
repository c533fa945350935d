#pragma once

// Time steppers for the gauged equation.  Two low-regularity exponential
// integrators — a first-order one-step scheme and a symmetric two-step
// scheme — plus a classical RK4 oracle on the twisted variable used as an
// independent reference in tests.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dnls/spectral.hpp"

namespace dnls {

enum class Method { basic, symmetric, oracle_rk4 };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

/// Provenance attached to a computed trajectory.
struct RunMeta {
  std::string method;
  int n_points = 0;
  double tau = 0.0;
  double s = 0.0;
  std::uint64_t seed = 0;
  double mu = 0.0;
};

/// Recorded states v(t_i) (or u(t_i) after un-gauging) with their times.
struct Trajectory {
  std::vector<double> times;
  std::vector<Field> states;
  RunMeta meta;
};

struct StepOptions {
  bool dealias = false;
};

/// The fixed-point starter for the two-step scheme failed to reach its
/// tolerance within the iteration budget.
class StarterError : public std::runtime_error {
 public:
  StarterError(double residual, int iterations)
      : std::runtime_error(
            "starter fixed-point iteration stalled at residual " +
            std::to_string(residual) + " after " +
            std::to_string(iterations) + " iterations"),
        last_residual(residual),
        iterations(iterations) {}

  double last_residual;
  int iterations;
};

/// A state stopped being finite (or the oracle's norm guard tripped).
class BlowupError : public std::runtime_error {
 public:
  BlowupError(const std::string& what, double time, std::size_t step)
      : std::runtime_error(what + " at t = " + std::to_string(time) +
                           " (step " + std::to_string(step) + ")"),
        time(time),
        step(step) {}

  double time;
  std::size_t step;
};

/// One step of the first-order exponential integrator:
///   v+ = e^{i tau dxx}[ v - (i/2) dx^{-1} g1(v, tau) - tau Pi_0(v^2 vbar_x)
///        + (i/2) tau v^2 phi1(-2 i tau dxx)(vbar^2 v)
///        - i mu tau v^2 phi1(-2 i tau dxx)(vbar) + i tau psi(v) v ].
/// tau may be negative (used by the starter and reversibility checks).
Field step_basic(const Field& v, double tau, double mu,
                 const StepOptions& opts = {});

/// One step of the symmetric two-step scheme, advancing (v_prev, v_curr)
/// at times (t - tau, t) to time t + tau:
///   v+ = e^{2 i tau dxx} v_prev + e^{i tau dxx}[ -(i/2) dx^{-1} g2(v, tau)
///        - 2 tau Pi_0(v^2 vbar_x) + i tau v^2 S_tau(vbar^2 v)
///        - 2 i mu tau v^2 S_tau(vbar) + 2 i tau psi(v) v ],
/// where S_tau = e^{2 i tau dxx} phi1(-4 i tau dxx) collapses to the real
/// even symbol sin(2 tau k^2)/(2 tau k^2).  Exchanging v_prev and v+ while
/// flipping the sign of tau reproduces the same relation, so the scheme is
/// time-reversible up to roundoff.
Field step_symmetric(const Field& v_curr, const Field& v_prev, double tau,
                     double mu, const StepOptions& opts = {});

/// First iterate v_1 for the two-step scheme, defined implicitly by
/// Psi^{-tau/2}(v_1) = Psi^{tau/2}(v_0) with Psi the one-step scheme, and
/// solved by fixed-point iteration in H^{norm_s}.  Throws StarterError if
/// the successive difference does not drop below tol within max_iter sweeps.
Field starter(const Field& v0, double tau, double mu, double tol = 1e-12,
              int max_iter = 50, double norm_s = 1.0,
              const StepOptions& opts = {});

struct EvolveOptions {
  Method method = Method::basic;
  bool dealias = false;
  double starter_tol = 1e-12;
  int starter_max_iter = 50;
  /// Sobolev index used for the starter stopping test.
  double norm_s = 1.0;
  /// Record every stride-th state (the initial and final states always).
  std::size_t stride = 1;
};

/// Callback receiving every computed state in order (before striding).
using StateSink =
    std::function<void(std::size_t step, double t, const Field& v)>;

/// Drive v0 over n_steps steps of size tau with the chosen method, feeding
/// each state (including the initial one) to the sink.  States are checked
/// for finiteness after every step.
void integrate(const Field& v0, double tau, std::size_t n_steps, double mu,
               const EvolveOptions& opts, const StateSink& sink);

/// Number of steps for a run to time t_end; requires tau > 0 and t_end >= 0
/// an integer multiple of tau (relative slack 1e-9).
std::size_t step_count(double tau, double t_end);

/// Integrate the gauged equation and collect the strided trajectory.
Trajectory evolve(const Field& v0, double tau, double t_end, double mu,
                  const EvolveOptions& opts = {});

/// Classical RK4 on the twisted variable z(t) = e^{-i t dxx} v(t), which
/// obeys z' = e^{-i t dxx} F(e^{i t dxx} z).  Aborts with BlowupError if
/// ||z||_{L^2} grows beyond ten times its initial value.  Reference method
/// for local-error tests; returns the full strided trajectory of v.
Trajectory oracle_rk4(const Field& v0, double tau, double t_end, double mu,
                      const EvolveOptions& opts = {});

/// Full solver for the original equation: gauge u0, evolve, un-gauge every
/// recorded state.  mu is taken from u0 and stored in the metadata.
Trajectory solve_dnls(const Field& u0, double tau, double t_end,
                      const EvolveOptions& opts = {});

}  // namespace dnls
