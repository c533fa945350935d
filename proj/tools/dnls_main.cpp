// Command line front end for the dNLS solver: convergence studies against a
// fine reference, long-time invariant tracking and single trajectories.
// Results land as manifest.json + CSV/plot files in --out, or as JSON on
// stdout when no output directory is given.

#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dnls/experiments.hpp"
#include "dnls/version.hpp"

namespace {

using dnls::StudyConfig;
using dnls::StudyKind;
using dnls::StudyResult;

// A tau token is a plain number ("0.125"), a dyadic power ("2^-9") or an
// inclusive dyadic range ("2^-5..2^-9") expanded one exponent at a time.
std::vector<double> parse_tau_tokens(const std::vector<std::string>& tokens) {
  static const std::regex power(R"(^2\^(-?\d+)$)");
  static const std::regex range(R"(^2\^(-?\d+)\.\.2\^(-?\d+)$)");
  std::vector<double> taus;
  for (const std::string& tok : tokens) {
    std::smatch m;
    if (std::regex_match(tok, m, range)) {
      const int a = std::stoi(m[1].str());
      const int b = std::stoi(m[2].str());
      const int step = (a <= b) ? 1 : -1;
      for (int e = a;; e += step) {
        taus.push_back(std::ldexp(1.0, e));
        if (e == b) break;
      }
    } else if (std::regex_match(tok, m, power)) {
      taus.push_back(std::ldexp(1.0, std::stoi(m[1].str())));
    } else {
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) {
        throw std::invalid_argument("cannot parse step token '" + tok +
                                    "' (expected a number, 2^-k or "
                                    "2^-a..2^-b)");
      }
      taus.push_back(value);
    }
  }
  return taus;
}

double parse_tau_single(const std::string& token) {
  std::vector<double> taus = parse_tau_tokens({token});
  if (taus.size() != 1) {
    throw std::invalid_argument("expected a single step, got a range");
  }
  return taus.front();
}

// Shared numeric options; each subcommand picks its own defaults.
struct CommonArgs {
  double s = 0.5;
  double eps = 0.0;
  int n_points = 512;
  double t_end = 1.0;
  std::uint64_t seed = 42;
  double target_norm = 0.5;
  std::string method = "basic";
  bool dealias = false;
  std::size_t stride = 1;
  std::string out;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--s", args.s, "Sobolev index of the data class")
      ->capture_default_str();
  cmd->add_option("--eps", args.eps, "extra decay in the coefficient law")
      ->capture_default_str();
  cmd->add_option("--n-points", args.n_points, "collocation points")
      ->capture_default_str();
  cmd->add_option("--t-end", args.t_end, "final time")->capture_default_str();
  cmd->add_option("--seed", args.seed, "seed for the initial datum")
      ->capture_default_str();
  cmd->add_option("--target-norm", args.target_norm,
                  "H^{s+1} norm of the initial datum")
      ->capture_default_str();
  cmd->add_option("--method", args.method,
                  "integrator: basic, symmetric or oracle_rk4")
      ->capture_default_str();
  cmd->add_flag("--dealias", args.dealias,
                "evaluate products on a zero-padded doubled grid");
  cmd->add_option("--stride", args.stride, "record every stride-th state")
      ->capture_default_str();
  cmd->add_option("--out", args.out,
                  "output directory (omit to print JSON to stdout)");
}

StudyConfig to_config(const CommonArgs& args, StudyKind kind,
                      std::vector<double> ladder, double tau_ref) {
  StudyConfig cfg;
  cfg.kind = kind;
  cfg.s = args.s;
  cfg.epsilon = args.eps;
  cfg.n_points = args.n_points;
  cfg.tau_ladder = std::move(ladder);
  cfg.tau_ref = tau_ref;
  cfg.t_end = args.t_end;
  cfg.seed = args.seed;
  cfg.target_norm = args.target_norm;
  cfg.method = dnls::method_from_name(args.method);
  cfg.dealias = args.dealias;
  cfg.stride = args.stride;
  cfg.output_path = args.out;
  return cfg;
}

void emit(const StudyResult& res, const std::string& out) {
  if (out.empty()) {
    std::cout << dnls::result_to_json(res).dump(2) << '\n';
  } else {
    dnls::write_result(res, out);
    std::cout << "wrote " << out << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral solver for the periodic derivative NLS equation"};
  app.set_version_flag("--version", dnls::library_version);
  app.require_subcommand(1);

  // --- convergence ---------------------------------------------------------
  CommonArgs conv_args;
  std::vector<std::string> conv_tau{"2^-5..2^-9"};
  std::string conv_tau_ref = "2^-12";
  std::vector<std::uint64_t> conv_seeds;
  CLI::App* conv = app.add_subcommand(
      "convergence", "tau-ladder error study against a fine reference");
  add_common(conv, conv_args);
  conv->add_option("--tau", conv_tau,
                   "ladder steps (numbers, 2^-k, or ranges 2^-a..2^-b)")
      ->capture_default_str();
  conv->add_option("--tau-ref", conv_tau_ref, "reference step")
      ->capture_default_str();
  conv->add_option("--seeds", conv_seeds,
                   "run once per seed and write per-seed directories");

  // --- conservation --------------------------------------------------------
  CommonArgs cons_args;
  cons_args.s = 1.0;
  cons_args.t_end = 100.0;
  cons_args.stride = 64;
  std::string cons_tau = "2^-10";
  CLI::App* cons = app.add_subcommand(
      "conservation", "long-time mass/energy drift of one method");
  add_common(cons, cons_args);
  cons->add_option("--tau", cons_tau, "step size (number or 2^-k)")
      ->capture_default_str();

  // --- run -----------------------------------------------------------------
  CommonArgs run_args;
  std::string run_tau = "2^-6";
  CLI::App* run = app.add_subcommand(
      "run", "single trajectory with observables and final state");
  add_common(run, run_args);
  run->add_option("--tau", run_tau, "step size (number or 2^-k)")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*conv) {
      StudyConfig cfg =
          to_config(conv_args, StudyKind::convergence,
                    parse_tau_tokens(conv_tau), parse_tau_single(conv_tau_ref));
      if (conv_seeds.empty()) {
        emit(dnls::run_convergence(cfg), conv_args.out);
      } else {
        // One study per seed; slopes are reported side by side, never
        // averaged.
        nlohmann::json summary;
        summary["config"] = dnls::config_to_json(cfg);
        summary["per_seed"] = nlohmann::json::array();
        for (std::uint64_t seed : conv_seeds) {
          StudyConfig per = cfg;
          per.seed = seed;
          StudyResult res = dnls::run_convergence(per);
          nlohmann::json entry{{"seed", seed}};
          if (res.fit) {
            entry["slope"] = res.fit->slope;
          } else {
            entry["slope"] = nullptr;
          }
          summary["per_seed"].push_back(entry);
          if (!conv_args.out.empty()) {
            dnls::write_result(res, conv_args.out + "/seed_" +
                                        std::to_string(seed));
          }
        }
        if (conv_args.out.empty()) {
          std::cout << summary.dump(2) << '\n';
        } else {
          std::filesystem::create_directories(conv_args.out);
          std::ofstream sfile(conv_args.out + "/seeds_summary.json");
          if (!sfile) {
            throw std::runtime_error("cannot write seeds_summary.json");
          }
          sfile << summary.dump(2) << '\n';
          std::cout << "wrote " << conv_args.out << '\n';
        }
      }
    } else if (*cons) {
      StudyConfig cfg = to_config(cons_args, StudyKind::conservation,
                                  {parse_tau_single(cons_tau)}, 0.0);
      cfg.tau_ref = cfg.tau_ladder.front() / 2.0;  // unused by this kind
      emit(dnls::run_conservation(cfg), cons_args.out);
    } else if (*run) {
      StudyConfig cfg = to_config(run_args, StudyKind::single_run,
                                  {parse_tau_single(run_tau)}, 0.0);
      cfg.tau_ref = cfg.tau_ladder.front() / 2.0;  // unused by this kind
      emit(dnls::run_single(cfg), run_args.out);
    }
  } catch (const std::exception& e) {
    nlohmann::json err{{"error", {{"message", e.what()}}}};
    std::cerr << err.dump() << '\n';
    return 1;
  }
  return 0;
}
