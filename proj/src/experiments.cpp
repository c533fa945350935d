#include "dnls/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "dnls/gauge.hpp"
#include "dnls/version.hpp"

namespace dnls {

namespace {

using steady = std::chrono::steady_clock;

double seconds_since(steady::time_point t0) {
  return std::chrono::duration<double>(steady::now() - t0).count();
}

// SplitMix64: counter-based, so per-mode streams can be made disjoint by
// spacing the starting states two increments apart.
std::uint64_t splitmix_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Uniform draw in [-1, 1) from the top 53 bits.
double uniform_pm1(std::uint64_t bits) {
  return 2.0 * (static_cast<double>(bits >> 11) * 0x1.0p-53) - 1.0;
}

// Mode k -> nonnegative stream index 0, 1, 2, ... interleaving signs.
std::uint64_t zigzag(int k) {
  return k >= 0 ? 2ULL * static_cast<std::uint64_t>(k)
                : 2ULL * static_cast<std::uint64_t>(-(k + 1)) + 1ULL;
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  return out;
}

constexpr std::size_t record_endpoints_only =
    std::numeric_limits<std::size_t>::max();

}  // namespace

std::string kind_name(StudyKind k) {
  switch (k) {
    case StudyKind::convergence:
      return "convergence";
    case StudyKind::conservation:
      return "conservation";
    case StudyKind::single_run:
      return "run";
  }
  throw std::invalid_argument("unknown study kind enumerator");
}

StudyKind kind_from_name(const std::string& name) {
  if (name == "convergence") return StudyKind::convergence;
  if (name == "conservation") return StudyKind::conservation;
  if (name == "run") return StudyKind::single_run;
  throw std::invalid_argument("unknown study kind '" + name +
                              "' (expected convergence, conservation or run)");
}

void validate(const StudyConfig& cfg) {
  if (cfg.s < 0.0) throw std::invalid_argument("s must be >= 0");
  if (cfg.epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
  if (!(cfg.target_norm > 0.0)) {
    throw std::invalid_argument("target_norm must be positive");
  }
  if (cfg.stride == 0) throw std::invalid_argument("stride must be >= 1");
  if (cfg.n_points < SpectralGrid::min_points ||
      cfg.n_points > SpectralGrid::max_points || cfg.n_points % 2 != 0) {
    throw std::invalid_argument("n_points must be even and within [4, 2^20]");
  }
  if (cfg.tau_ladder.empty()) {
    throw std::invalid_argument("tau_ladder must contain at least one step");
  }
  for (double tau : cfg.tau_ladder) {
    step_count(tau, cfg.t_end);  // validates sign and commensurability
  }
  if (cfg.kind == StudyKind::convergence) {
    step_count(cfg.tau_ref, cfg.t_end);
    const double tau_min =
        *std::min_element(cfg.tau_ladder.begin(), cfg.tau_ladder.end());
    if (!(cfg.tau_ref < tau_min)) {
      throw std::invalid_argument(
          "tau_ref must be smaller than every ladder step");
    }
  }
}

Field gen_rough_data(double s, double epsilon, const GridPtr& grid,
                     std::uint64_t seed, double target_norm) {
  if (!grid) throw std::invalid_argument("gen_rough_data requires a grid");
  if (!(target_norm > 0.0)) {
    throw std::invalid_argument("target_norm must be positive");
  }
  const double decay = -(s + 1.5 + epsilon) / 2.0;
  Field u = Field::zero(grid);
  auto ks = grid->wavenumbers();
  auto c = u.coeffs();
  const int nyquist = -grid->n_points() / 2;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const int k = ks[j];
    if (k == nyquist) continue;  // keep the unmatched slot empty
    std::uint64_t state = seed + 2ULL * zigzag(k) * 0x9E3779B97F4A7C15ULL;
    const double re = uniform_pm1(splitmix_next(state));
    const double im = uniform_pm1(splitmix_next(state));
    const double amp = std::pow(1.0 + static_cast<double>(k) * k, decay);
    c[j] = cplx(re * amp, im * amp);
  }
  const double norm = sobolev_norm(u, s + 1.0);
  if (!(norm > 0.0)) {
    throw std::runtime_error("rough datum degenerated to zero");
  }
  u *= cplx(target_norm / norm, 0.0);
  return u;
}

SlopeFit fit_loglog_slope(std::span<const double> taus,
                          std::span<const double> errors) {
  if (taus.size() != errors.size()) {
    throw std::invalid_argument("fit_loglog_slope: length mismatch");
  }
  if (taus.size() < 2) {
    throw std::invalid_argument("fit_loglog_slope needs at least two points");
  }
  std::vector<double> x(taus.size());
  std::vector<double> y(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!(taus[i] > 0.0) || !(errors[i] > 0.0)) {
      throw std::invalid_argument(
          "fit_loglog_slope needs strictly positive taus and errors");
    }
    x[i] = std::log2(taus[i]);
    y[i] = std::log2(errors[i]);
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) {
    throw std::invalid_argument("fit_loglog_slope: all taus coincide");
  }
  const double slope = sxy / sxx;
  return SlopeFit{slope, my - slope * mx};
}

StudyResult run_convergence(const StudyConfig& cfg) {
  validate(cfg);
  const auto t0 = steady::now();
  StudyResult res;
  res.config = cfg;
  res.library_version = library_version;

  GridPtr grid = make_grid(cfg.n_points);
  Field u0 =
      gen_rough_data(cfg.s, cfg.epsilon, grid, cfg.seed, cfg.target_norm);

  EvolveOptions opts;
  opts.method = cfg.method;
  opts.dealias = cfg.dealias;
  opts.norm_s = cfg.s;
  opts.stride = record_endpoints_only;

  Field u_ref = solve_dnls(u0, cfg.tau_ref, cfg.t_end, opts).states.back();

  for (double tau : cfg.tau_ladder) {
    const auto p0 = steady::now();
    LadderPoint pt;
    pt.tau = tau;
    try {
      Field u_tau = solve_dnls(u0, tau, cfg.t_end, opts).states.back();
      pt.hs_error = hs_distance(u_tau, u_ref, cfg.s);
      pt.ok = true;
    } catch (const std::exception& e) {
      pt.hs_error = std::numeric_limits<double>::quiet_NaN();
      pt.ok = false;
      pt.message = e.what();
    }
    pt.runtime_sec = seconds_since(p0);
    res.points.push_back(std::move(pt));
  }

  std::vector<double> taus;
  std::vector<double> errs;
  for (const LadderPoint& pt : res.points) {
    if (pt.ok && pt.hs_error > 0.0) {
      taus.push_back(pt.tau);
      errs.push_back(pt.hs_error);
    }
  }
  // A slope from fewer than three successful points is not worth reporting.
  if (taus.size() >= 3) res.fit = fit_loglog_slope(taus, errs);

  res.runtime_sec = seconds_since(t0);
  return res;
}

StudyResult run_conservation(const StudyConfig& cfg) {
  validate(cfg);
  const auto t0 = steady::now();
  StudyResult res;
  res.config = cfg;
  res.library_version = library_version;

  GridPtr grid = make_grid(cfg.n_points);
  Field u0 =
      gen_rough_data(cfg.s, cfg.epsilon, grid, cfg.seed, cfg.target_norm);
  const double mu = mean_intensity(u0);
  Field v0 = gauge_forward(u0, cfg.dealias);

  EvolveOptions opts;
  opts.method = cfg.method;
  opts.dealias = cfg.dealias;
  opts.norm_s = cfg.s;

  const double tau = cfg.tau_ladder.front();
  const std::size_t n_steps = step_count(tau, cfg.t_end);
  ObservableSeries& series = res.series;
  integrate(v0, tau, n_steps, mu, opts,
            [&](std::size_t step, double t, const Field& v) {
              if (step % cfg.stride != 0 && step != n_steps) return;
              Field u = gauge_inverse(v, GaugeContext{mu, t}, cfg.dealias);
              series.times.push_back(t);
              series.mass.push_back(mass(u));
              series.energy.push_back(energy(u));
            });
  for (std::size_t i = 0; i < series.mass.size(); ++i) {
    series.rel_mass_err.push_back(
        relative_error(series.mass[i], series.mass[0]));
    series.rel_energy_err.push_back(
        relative_error(series.energy[i], series.energy[0]));
  }

  res.runtime_sec = seconds_since(t0);
  return res;
}

StudyResult run_single(const StudyConfig& cfg) {
  validate(cfg);
  const auto t0 = steady::now();
  StudyResult res;
  res.config = cfg;
  res.library_version = library_version;

  GridPtr grid = make_grid(cfg.n_points);
  Field u0 =
      gen_rough_data(cfg.s, cfg.epsilon, grid, cfg.seed, cfg.target_norm);

  EvolveOptions opts;
  opts.method = cfg.method;
  opts.dealias = cfg.dealias;
  opts.norm_s = cfg.s;
  opts.stride = cfg.stride;

  Trajectory traj = solve_dnls(u0, cfg.tau_ladder.front(), cfg.t_end, opts);
  traj.meta.s = cfg.s;
  traj.meta.seed = cfg.seed;
  res.series = conservation_series(traj);
  res.final_state = traj.states.back();

  res.runtime_sec = seconds_since(t0);
  return res;
}

nlohmann::json config_to_json(const StudyConfig& cfg) {
  return nlohmann::json{{"kind", kind_name(cfg.kind)},
                        {"s", cfg.s},
                        {"epsilon", cfg.epsilon},
                        {"n_points", cfg.n_points},
                        {"tau_ladder", cfg.tau_ladder},
                        {"tau_ref", cfg.tau_ref},
                        {"t_end", cfg.t_end},
                        {"seed", cfg.seed},
                        {"target_norm", cfg.target_norm},
                        {"method", method_name(cfg.method)},
                        {"dealias", cfg.dealias},
                        {"stride", cfg.stride},
                        {"output_path", cfg.output_path}};
}

StudyConfig config_from_json(const nlohmann::json& j) {
  StudyConfig cfg;
  cfg.kind = kind_from_name(j.value("kind", kind_name(cfg.kind)));
  cfg.s = j.value("s", cfg.s);
  cfg.epsilon = j.value("epsilon", cfg.epsilon);
  cfg.n_points = j.value("n_points", cfg.n_points);
  cfg.tau_ladder = j.value("tau_ladder", cfg.tau_ladder);
  cfg.tau_ref = j.value("tau_ref", cfg.tau_ref);
  cfg.t_end = j.value("t_end", cfg.t_end);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.target_norm = j.value("target_norm", cfg.target_norm);
  cfg.method = method_from_name(j.value("method", method_name(cfg.method)));
  cfg.dealias = j.value("dealias", cfg.dealias);
  cfg.stride = j.value("stride", cfg.stride);
  cfg.output_path = j.value("output_path", cfg.output_path);
  return cfg;
}

nlohmann::json result_to_json(const StudyResult& res) {
  nlohmann::json points = nlohmann::json::array();
  for (const LadderPoint& pt : res.points) {
    nlohmann::json jp{{"tau", pt.tau},
                      {"runtime_sec", pt.runtime_sec},
                      {"ok", pt.ok},
                      {"message", pt.message}};
    if (pt.ok) {
      jp["hs_error"] = pt.hs_error;
    } else {
      jp["hs_error"] = nullptr;
    }
    points.push_back(std::move(jp));
  }
  nlohmann::json j{{"config", config_to_json(res.config)},
                   {"library_version", res.library_version},
                   {"runtime_sec", res.runtime_sec},
                   {"points", std::move(points)}};
  if (res.fit) {
    j["fit"] = {{"slope", res.fit->slope}, {"intercept", res.fit->intercept}};
  } else {
    j["fit"] = nullptr;
  }
  j["series"] = {{"times", res.series.times},
                 {"mass", res.series.mass},
                 {"energy", res.series.energy},
                 {"rel_mass_err", res.series.rel_mass_err},
                 {"rel_energy_err", res.series.rel_energy_err}};
  return j;
}

void write_result(const StudyResult& res, const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path base(dir);
  fs::create_directories(base);

  {
    auto out = open_out(base / "manifest.json");
    out << result_to_json(res).dump(2) << '\n';
  }

  const StudyKind kind = res.config.kind;
  if (kind == StudyKind::convergence) {
    auto csv = open_out(base / "convergence.csv");
    csv << "tau,hs_error\n";
    auto dat = open_out(base / "plot_error_vs_tau.dat");
    dat << "# tau  hs_error  (plot log-log)\n";
    for (const LadderPoint& pt : res.points) {
      if (!pt.ok) continue;
      csv << fmt_double(pt.tau) << ',' << fmt_double(pt.hs_error) << '\n';
      dat << fmt_double(pt.tau) << ' ' << fmt_double(pt.hs_error) << '\n';
    }
  } else {
    auto csv = open_out(base / "conservation.csv");
    csv << "t,mass,energy,rel_mass_err,rel_energy_err\n";
    for (std::size_t i = 0; i < res.series.times.size(); ++i) {
      csv << fmt_double(res.series.times[i]) << ','
          << fmt_double(res.series.mass[i]) << ','
          << fmt_double(res.series.energy[i]) << ','
          << fmt_double(res.series.rel_mass_err[i]) << ','
          << fmt_double(res.series.rel_energy_err[i]) << '\n';
    }
    if (kind == StudyKind::conservation) {
      auto dm = open_out(base / "plot_mass_err.dat");
      dm << "# t  rel_mass_err\n";
      auto de = open_out(base / "plot_energy_err.dat");
      de << "# t  rel_energy_err\n";
      for (std::size_t i = 0; i < res.series.times.size(); ++i) {
        dm << fmt_double(res.series.times[i]) << ' '
           << fmt_double(res.series.rel_mass_err[i]) << '\n';
        de << fmt_double(res.series.times[i]) << ' '
           << fmt_double(res.series.rel_energy_err[i]) << '\n';
      }
    }
  }

  if (res.final_state) {
    auto csv = open_out(base / "final_state.csv");
    csv << "k,re,im\n";
    const Field& f = *res.final_state;
    const int n = f.grid()->n_points();
    for (int k = -n / 2; k <= n / 2 - 1; ++k) {
      const cplx c = f.coeff(k);
      csv << k << ',' << fmt_double(c.real()) << ',' << fmt_double(c.imag())
          << '\n';
    }
  }
}

}  // namespace dnls
