#pragma once

// Experiment drivers: reproducible rough initial data, tau-ladder
// convergence studies against a fine reference, long-time invariant
// tracking, and serialisation of configurations and results.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dnls/integrators.hpp"
#include "dnls/observables.hpp"
#include "dnls/spectral.hpp"

namespace dnls {

enum class StudyKind { convergence, conservation, single_run };

std::string kind_name(StudyKind k);
StudyKind kind_from_name(const std::string& name);

struct StudyConfig {
  StudyKind kind = StudyKind::convergence;
  /// Sobolev index of the data class; errors are measured in H^s.
  double s = 0.5;
  /// Extra decay epsilon in the coefficient law <k>^{-(s + 3/2 + epsilon)}.
  double epsilon = 0.0;
  int n_points = 512;
  /// Step sizes of the ladder; conservation and single runs use the first
  /// entry only.
  std::vector<double> tau_ladder;
  /// Reference step size for convergence studies; must undercut the ladder.
  double tau_ref = 0.000244140625;  // 2^-12
  double t_end = 1.0;
  std::uint64_t seed = 42;
  /// The initial datum is rescaled to this H^{s+1} norm.
  double target_norm = 0.5;
  Method method = Method::basic;
  bool dealias = false;
  std::size_t stride = 1;
  std::string output_path;
};

/// Throws std::invalid_argument when the configuration is inconsistent
/// (empty ladder, tau_ref not below the ladder, t_end not commensurate with
/// the steps, nonpositive norms, ...).
void validate(const StudyConfig& cfg);

struct LadderPoint {
  double tau = 0.0;
  double hs_error = 0.0;
  double runtime_sec = 0.0;
  bool ok = false;
  std::string message;
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
};

struct StudyResult {
  StudyConfig config;
  std::string library_version;
  std::vector<LadderPoint> points;
  std::optional<SlopeFit> fit;
  ObservableSeries series;
  std::optional<Field> final_state;
  double runtime_sec = 0.0;
};

/// Random H^s-rough datum: coefficient of mode k is a uniform draw from the
/// complex square [-1,1)^2 damped by <k>^{-(s + 3/2 + epsilon)}, the Nyquist
/// slot left empty, the whole field rescaled to ||u||_{H^{s+1}} =
/// target_norm.  The per-mode draws come from disjoint SplitMix64 streams
/// indexed by (seed, k), so the datum is reproducible across platforms and
/// grid sizes: refining the grid extends the datum without changing the
/// modes already present.
Field gen_rough_data(double s, double epsilon, const GridPtr& grid,
                     std::uint64_t seed, double target_norm);

/// Least-squares slope of log2(error) against log2(tau).  Needs at least
/// two points, all positive.
SlopeFit fit_loglog_slope(std::span<const double> taus,
                          std::span<const double> errors);

/// Run every ladder step and the reference with the configured method and
/// fit the observed order.  Ladder entries that fail (blow-up, starter
/// failure) are recorded with ok = false and excluded from the fit.
StudyResult run_convergence(const StudyConfig& cfg);

/// Long-time run tracking mass and energy of the un-gauged solution every
/// stride-th step.  States are streamed, not stored.
StudyResult run_conservation(const StudyConfig& cfg);

/// Single trajectory with observables and the final state kept.
StudyResult run_single(const StudyConfig& cfg);

nlohmann::json config_to_json(const StudyConfig& cfg);
StudyConfig config_from_json(const nlohmann::json& j);
nlohmann::json result_to_json(const StudyResult& res);

/// Write manifest.json plus kind-dependent CSV / plot-data files into dir
/// (created if missing):
///   convergence: convergence.csv, plot_error_vs_tau.dat
///   conservation: conservation.csv, plot_mass_err.dat, plot_energy_err.dat
///   single run:  conservation.csv and final_state.csv.
void write_result(const StudyResult& res, const std::string& dir);

}  // namespace dnls
