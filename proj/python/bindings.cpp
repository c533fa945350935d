// Python bindings for the dnls core library.  Fields cross the boundary as
// 1-d numpy arrays of Fourier coefficients in FFT order; everything heavy
// stays in C++.  Study entry points exchange JSON strings so the python side
// can use plain dicts.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "dnls/experiments.hpp"
#include "dnls/gauge.hpp"
#include "dnls/integrators.hpp"
#include "dnls/nonlinearity.hpp"
#include "dnls/observables.hpp"
#include "dnls/spectral.hpp"
#include "dnls/version.hpp"

namespace py = pybind11;
using namespace dnls;

namespace {

using CoeffArray =
    py::array_t<cplx, py::array::c_style | py::array::forcecast>;

Field field_from_array(const CoeffArray& arr) {
  if (arr.ndim() != 1) {
    throw std::invalid_argument("expected a 1-d coefficient array");
  }
  const auto n = arr.shape(0);
  std::vector<cplx> coeffs(arr.data(), arr.data() + n);
  return Field(make_grid(static_cast<int>(n)), std::move(coeffs));
}

py::array_t<cplx> array_from_field(const Field& f) {
  py::array_t<cplx> out(static_cast<py::ssize_t>(f.size()));
  std::copy_n(f.coeffs().data(), f.size(), out.mutable_data());
  return out;
}

py::dict trajectory_to_dict(const Trajectory& traj) {
  const py::ssize_t rows = static_cast<py::ssize_t>(traj.states.size());
  const py::ssize_t cols =
      rows > 0 ? static_cast<py::ssize_t>(traj.states.front().size()) : 0;
  py::array_t<double> times(rows);
  py::array_t<cplx> states({rows, cols});
  for (py::ssize_t i = 0; i < rows; ++i) {
    times.mutable_at(i) = traj.times[static_cast<std::size_t>(i)];
    const auto row = traj.states[static_cast<std::size_t>(i)].coeffs();
    std::copy_n(row.data(), cols, states.mutable_data(i, 0));
  }
  py::dict out;
  out["times"] = std::move(times);
  out["states"] = std::move(states);
  out["method"] = traj.meta.method;
  out["tau"] = traj.meta.tau;
  out["mu"] = traj.meta.mu;
  return out;
}

EvolveOptions make_evolve_options(const std::string& method, bool dealias,
                                  std::size_t stride) {
  EvolveOptions opts;
  opts.method = method_from_name(method);
  opts.dealias = dealias;
  opts.stride = stride;
  return opts;
}

std::string run_study_json(const std::string& config_json) {
  const StudyConfig cfg =
      config_from_json(nlohmann::json::parse(config_json));
  StudyResult res;
  switch (cfg.kind) {
    case StudyKind::convergence:
      res = run_convergence(cfg);
      break;
    case StudyKind::conservation:
      res = run_conservation(cfg);
      break;
    case StudyKind::single_run:
      res = run_single(cfg);
      break;
  }
  return result_to_json(res).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral solver for the periodic derivative NLS equation";
  m.attr("__version__") = library_version;

  // Grid geometry -----------------------------------------------------------
  m.def(
      "nodes",
      [](int n) {
        auto xs = make_grid(n)->nodes();
        py::array_t<double> out(static_cast<py::ssize_t>(xs.size()));
        std::copy(xs.begin(), xs.end(), out.mutable_data());
        return out;
      },
      py::arg("n"), "Collocation nodes x_j = 2*pi*j/n.");
  m.def(
      "wavenumbers",
      [](int n) {
        // Keep the grid alive while copying: wavenumbers() is a span into it.
        GridPtr g = make_grid(n);
        auto ks = g->wavenumbers();
        py::array_t<int> out(static_cast<py::ssize_t>(ks.size()));
        std::copy(ks.begin(), ks.end(), out.mutable_data());
        return out;
      },
      py::arg("n"), "Integer wavenumbers in FFT order.");

  // Transforms --------------------------------------------------------------
  m.def(
      "to_physical",
      [](const CoeffArray& coeffs) {
        Field f = field_from_array(coeffs);
        auto vals = to_physical(f);
        py::array_t<cplx> out(static_cast<py::ssize_t>(vals.size()));
        std::copy(vals.begin(), vals.end(), out.mutable_data());
        return out;
      },
      py::arg("coeffs"), "Samples of the interpolant at the grid nodes.");
  m.def(
      "to_spectral",
      [](const CoeffArray& values) {
        if (values.ndim() != 1) {
          throw std::invalid_argument("expected a 1-d sample array");
        }
        const auto n = values.shape(0);
        std::vector<cplx> samples(values.data(), values.data() + n);
        return array_from_field(
            to_spectral(samples, make_grid(static_cast<int>(n))));
      },
      py::arg("values"),
      "Fourier coefficients c_k = (1/n) sum_j f(x_j) e^{-i k x_j}.");

  // Norms and observables ---------------------------------------------------
  m.def(
      "sobolev_norm",
      [](const CoeffArray& coeffs, double s) {
        return sobolev_norm(field_from_array(coeffs), s);
      },
      py::arg("coeffs"), py::arg("s"));
  m.def(
      "hs_distance",
      [](const CoeffArray& a, const CoeffArray& b, double s) {
        return hs_distance(field_from_array(a), field_from_array(b), s);
      },
      py::arg("a"), py::arg("b"), py::arg("s"));
  m.def(
      "mass",
      [](const CoeffArray& coeffs) { return mass(field_from_array(coeffs)); },
      py::arg("coeffs"));
  m.def(
      "energy",
      [](const CoeffArray& coeffs, bool padded_quadrature) {
        return energy(field_from_array(coeffs), padded_quadrature);
      },
      py::arg("coeffs"), py::arg("padded_quadrature") = false);
  m.def(
      "mean_intensity",
      [](const CoeffArray& coeffs) {
        return mean_intensity(field_from_array(coeffs));
      },
      py::arg("coeffs"));

  // Gauge -------------------------------------------------------------------
  m.def(
      "gauge_forward",
      [](const CoeffArray& coeffs) {
        return array_from_field(gauge_forward(field_from_array(coeffs)));
      },
      py::arg("coeffs"));
  m.def(
      "gauge_at_time",
      [](const CoeffArray& coeffs, double mu, double t) {
        return array_from_field(
            gauge_at_time(field_from_array(coeffs), GaugeContext{mu, t}));
      },
      py::arg("coeffs"), py::arg("mu"), py::arg("t"));
  m.def(
      "gauge_inverse",
      [](const CoeffArray& coeffs, double mu, double t) {
        return array_from_field(
            gauge_inverse(field_from_array(coeffs), GaugeContext{mu, t}));
      },
      py::arg("coeffs"), py::arg("mu"), py::arg("t"));

  // Nonlinearity ------------------------------------------------------------
  m.def(
      "phase_rate",
      [](const CoeffArray& coeffs, double mu) {
        return phase_rate(field_from_array(coeffs), mu);
      },
      py::arg("coeffs"), py::arg("mu"));
  m.def(
      "nonlinear_total",
      [](const CoeffArray& coeffs, double mu) {
        return array_from_field(
            nonlinear_rhs(field_from_array(coeffs), mu).total());
      },
      py::arg("coeffs"), py::arg("mu"),
      "Full transformed right-hand side F(v).");
  m.def(
      "resonance_kernel",
      [](const CoeffArray& coeffs, double tau) {
        return array_from_field(
            resonance_kernel(field_from_array(coeffs), tau));
      },
      py::arg("coeffs"), py::arg("tau"));

  // Stepping ----------------------------------------------------------------
  m.def(
      "step_basic",
      [](const CoeffArray& v, double tau, double mu) {
        return array_from_field(step_basic(field_from_array(v), tau, mu));
      },
      py::arg("v"), py::arg("tau"), py::arg("mu"));
  m.def(
      "step_symmetric",
      [](const CoeffArray& v_curr, const CoeffArray& v_prev, double tau,
         double mu) {
        return array_from_field(step_symmetric(
            field_from_array(v_curr), field_from_array(v_prev), tau, mu));
      },
      py::arg("v_curr"), py::arg("v_prev"), py::arg("tau"), py::arg("mu"));
  m.def(
      "solve_dnls",
      [](const CoeffArray& u0, double tau, double t_end,
         const std::string& method, bool dealias, std::size_t stride) {
        return trajectory_to_dict(
            solve_dnls(field_from_array(u0), tau, t_end,
                       make_evolve_options(method, dealias, stride)));
      },
      py::arg("u0"), py::arg("tau"), py::arg("t_end"),
      py::arg("method") = "basic", py::arg("dealias") = false,
      py::arg("stride") = std::size_t{1},
      "Gauge, integrate and un-gauge; returns times and recorded states.");
  m.def(
      "oracle_rk4",
      [](const CoeffArray& v0, double tau, double t_end, double mu,
         std::size_t stride) {
        EvolveOptions opts;
        opts.method = Method::oracle_rk4;
        opts.stride = stride;
        return trajectory_to_dict(
            oracle_rk4(field_from_array(v0), tau, t_end, mu, opts));
      },
      py::arg("v0"), py::arg("tau"), py::arg("t_end"), py::arg("mu"),
      py::arg("stride") = std::size_t{1});

  // Experiments -------------------------------------------------------------
  m.def(
      "gen_rough_data",
      [](double s, double epsilon, int n, std::uint64_t seed,
         double target_norm) {
        return array_from_field(
            gen_rough_data(s, epsilon, make_grid(n), seed, target_norm));
      },
      py::arg("s"), py::arg("epsilon"), py::arg("n"), py::arg("seed"),
      py::arg("target_norm"),
      "Reproducible rough datum with ||u||_{H^{s+1}} = target_norm.");
  m.def("run_study_json", &run_study_json, py::arg("config_json"),
        "Run a convergence / conservation / single-run study described by a "
        "JSON config string; returns the result as a JSON string.");
}
