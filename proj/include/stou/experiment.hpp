#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "stou/core.hpp"
#include "stou/inference.hpp"
#include "stou/levy.hpp"
#include "stou/simulate.hpp"

namespace stou {

enum class SimAlgorithm { RG, DG, DG_FULL };

SimAlgorithm sim_algorithm_from_string(const std::string& name);
std::string to_string(SimAlgorithm alg);

/// Monte Carlo estimator-study configuration. Defaults mirror the desk-scale
/// study: 50 replicates of a Gaussian field on [0,10]^2 with spacing 0.05.
struct ExperimentConfig {
  int replicates = 50;
  ModelParams params{1.0, 1.0};
  LevySeed seed = LevySeed::gaussian(0.2, 0.1);
  GridSpec grid{0.0, 0.0, 0.05, 0.05, 201, 201};
  int p = 300;
  int q = 300;
  SimAlgorithm algorithm = SimAlgorithm::RG;
  bool run_mm = true;
  bool run_ls = true;
  int n_lags = 15;
  std::uint64_t master_seed = 1;
  int jobs = 1;
  std::string out;  // empty = standard output
};

/// Parses a comma-separated `name=value,...` list (as used by --basis-params).
std::map<std::string, double> parse_kv_list(const std::string& text);

/// Builds a seed of the given family from named parameters
/// (gaussian: mu,tau; ig: delta,gamma; nig: alpha,beta,mu,delta;
/// gamma: alpha,beta). Throws ParseError on missing names.
LevySeed make_seed(SeedFamily family, const std::map<std::string, double>& kv);

/// Parses the plain-text `key = value` config format (# starts a comment).
/// Throws ParseError on unknown keys or malformed values.
ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig parse_experiment_config_file(const std::string& path);

/// One row of the estimates table.
struct ReplicateRow {
  int replicate = 0;
  std::uint64_t stream_id = 0;
  FitMethod method = FitMethod::MM;
  bool fit_ok = false;
  EstimationResult result;      // meaningful when fit_ok
  std::string failure_reason;   // set when !fit_ok
  double seconds = 0.0;
};

/// Runs the replicates (streams keyed by replicate id, so any --jobs level
/// gives identical rows) and writes the estimates table plus a summary block
/// of per-parameter medians, IQRs and invalid counts as trailing comments.
std::vector<ReplicateRow> run_experiment(const ExperimentConfig& config);
void write_experiment_csv(const ExperimentConfig& config,
                          const std::vector<ReplicateRow>& rows,
                          std::ostream& out);

}  // namespace stou
