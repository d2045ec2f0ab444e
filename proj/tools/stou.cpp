#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>

#include "stou/experiment.hpp"
#include "stou/inference.hpp"
#include "stou/io.hpp"
#include "stou/mse.hpp"
#include "stou/predict.hpp"
#include "stou/simulate.hpp"
#include "stou/theory.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

// Single-line diagnostic plus the documented exit code for each error class:
// numeric failures (3), data errors (2), everything else argument misuse (1).
int classify_and_report(const std::exception& e) {
  std::cerr << "error: " << e.what() << '\n';
  if (dynamic_cast<const stou::DegenerateVariogram*>(&e) ||
      dynamic_cast<const stou::OptimizerNoBracket*>(&e) ||
      dynamic_cast<const stou::SingularCorrelation*>(&e) ||
      dynamic_cast<const stou::InvalidCumulants*>(&e))
    return kExitNumeric;
  if (dynamic_cast<const stou::ParseError*>(&e) ||
      dynamic_cast<const stou::NonUniformGrid*>(&e) ||
      dynamic_cast<const stou::NoPairs*>(&e) ||
      dynamic_cast<const stou::TooFewPoints*>(&e) ||
      dynamic_cast<const stou::DuplicateSites*>(&e) ||
      dynamic_cast<const stou::LengthMismatch*>(&e))
    return kExitData;
  return kExitUsage;
}

// Writes to the path when given, standard output otherwise.
int with_output(const std::string& path,
                const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(std::cout);
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open for writing: " << path << '\n';
    return kExitData;
  }
  fn(out);
  return out ? 0 : kExitData;
}

std::vector<double> parse_sweep(const std::string& text) {
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) return {std::stod(text)};
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw stou::ParseError("sweep must be a number or start:stop:step: " + text);
  const double start = std::stod(text.substr(0, c1));
  const double stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
  const double step = std::stod(text.substr(c2 + 1));
  if (!(step > 0.0) || stop < start)
    throw stou::ParseError("bad sweep range: " + text);
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double v = start + i * step;
    if (v > stop + 1e-12 * step) break;
    out.push_back(v);
  }
  return out;
}

std::pair<double, double> parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw stou::ParseError("expected x,t: " + text);
  return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Simulation, inference and prediction for the canonical spatio-temporal "
      "OU random field"};
  app.require_subcommand(1);

  // ---- simulate ----
  auto* sim = app.add_subcommand("simulate", "Simulate a field and emit CSV");
  std::string sim_alg = "rg", sim_basis = "gaussian",
              sim_basis_params = "mu=0.2,tau=0.1", sim_out;
  double sim_lambda = 1.0, sim_c = 1.0, sim_dx = 0.05, sim_dt = 0.05,
         sim_x0 = 0.0, sim_t0 = 0.0;
  long sim_nx = 201, sim_nt = 201;
  int sim_p = 300, sim_q = 300;
  std::uint64_t sim_seed = 1, sim_stream = 0;
  sim->add_option("--alg", sim_alg, "rg | dg | dg-full")->capture_default_str();
  sim->add_option("--lambda", sim_lambda)->capture_default_str();
  sim->add_option("--c", sim_c)->capture_default_str();
  sim->add_option("--basis", sim_basis, "gaussian | ig | nig | gamma")
      ->capture_default_str();
  sim->add_option("--basis-params", sim_basis_params, "name=value,...")
      ->capture_default_str();
  sim->add_option("--nx", sim_nx)->capture_default_str();
  sim->add_option("--nt", sim_nt)->capture_default_str();
  sim->add_option("--dx", sim_dx)->capture_default_str();
  sim->add_option("--dt", sim_dt)->capture_default_str();
  sim->add_option("--x0", sim_x0)->capture_default_str();
  sim->add_option("--t0", sim_t0)->capture_default_str();
  sim->add_option("--p", sim_p)->capture_default_str();
  sim->add_option("--q", sim_q)->capture_default_str();
  sim->add_option("--seed", sim_seed, "master seed")->capture_default_str();
  sim->add_option("--stream", sim_stream, "stream id")->capture_default_str();
  sim->add_option("--out", sim_out, "output path (default: stdout)");

  // ---- fit ----
  auto* fit = app.add_subcommand("fit", "Estimate parameters from a field CSV");
  std::string fit_method = "mm", fit_basis = "gaussian", fit_in, fit_out;
  int fit_lags = 15;
  fit->add_option("--method", fit_method, "mm | ls")->capture_default_str();
  fit->add_option("--lags", fit_lags, "number of lags for ls")
      ->capture_default_str();
  fit->add_option("--basis", fit_basis)->capture_default_str();
  fit->add_option("--in", fit_in, "input field CSV")->required();
  fit->add_option("--out", fit_out);

  // ---- acf ----
  auto* acf = app.add_subcommand("acf", "Tabulate theoretical autocorrelations");
  double acf_lambda = 1.0, acf_c = 1.0, acf_c1 = 0.0, acf_c2 = 0.0,
         acf_dxmax = 0.0, acf_dtmax = 0.0, acf_step = 0.05;
  std::string acf_out;
  acf->add_option("--lambda", acf_lambda)->capture_default_str();
  acf->add_option("--c", acf_c)->capture_default_str();
  acf->add_option("--c1", acf_c1, "two-piece boundary: inner slope");
  acf->add_option("--c2", acf_c2, "two-piece boundary: outer slope");
  acf->add_option("--dx-max", acf_dxmax)->capture_default_str();
  acf->add_option("--dt-max", acf_dtmax)->capture_default_str();
  acf->add_option("--step", acf_step)->capture_default_str();
  acf->add_option("--out", acf_out);

  // ---- mse ----
  auto* mse = app.add_subcommand("mse", "Evaluate simulation MSE formulas");
  std::string mse_alg = "rg", mse_delta = "0.05", mse_R = "15", mse_out;
  double mse_lambda = 1.0, mse_c = 1.0, mse_mu = 0.2, mse_tau = 0.1;
  mse->add_option("--alg", mse_alg, "rg | dg")->capture_default_str();
  mse->add_option("--lambda", mse_lambda)->capture_default_str();
  mse->add_option("--c", mse_c)->capture_default_str();
  mse->add_option("--mu", mse_mu)->capture_default_str();
  mse->add_option("--tau", mse_tau)->capture_default_str();
  mse->add_option("--delta", mse_delta, "grid size or start:stop:step")
      ->capture_default_str();
  mse->add_option("--R", mse_R, "truncation range or start:stop:step")
      ->capture_default_str();
  mse->add_option("--out", mse_out);

  // ---- predict ----
  auto* pred = app.add_subcommand("predict", "Gaussian conditional prediction");
  std::string pred_obs, pred_at, pred_out;
  double pred_lambda = 1.0, pred_c = 1.0, pred_mu = 0.2, pred_tau = 0.1;
  pred->add_option("--obs", pred_obs, "observations CSV (x,t,value)")
      ->required();
  pred->add_option("--lambda", pred_lambda)->capture_default_str();
  pred->add_option("--c", pred_c)->capture_default_str();
  pred->add_option("--mu", pred_mu, "seed mean")->capture_default_str();
  pred->add_option("--tau", pred_tau, "seed standard deviation")
      ->capture_default_str();
  pred->add_option("--at", pred_at, "target site x,t")->required();
  pred->add_option("--out", pred_out);

  // ---- experiment ----
  auto* exp = app.add_subcommand("experiment", "Monte Carlo estimator study");
  std::string exp_config;
  int exp_jobs = 0;
  std::string exp_out;
  exp->add_option("--config", exp_config, "key = value config file")
      ->required();
  exp->add_option("--jobs", exp_jobs, "parallel replicates (overrides config)");
  exp->add_option("--out", exp_out, "output path (overrides config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sim->parsed()) {
      const stou::ModelParams params(sim_lambda, sim_c);
      const stou::LevySeed seed =
          stou::make_seed(stou::seed_family_from_string(sim_basis),
                          stou::parse_kv_list(sim_basis_params));
      stou::GridSpec grid{sim_x0, sim_t0, sim_dx, sim_dt, sim_nx, sim_nt};
      const stou::RngStream stream{sim_seed, sim_stream};
      stou::FieldData field = [&] {
        switch (stou::sim_algorithm_from_string(sim_alg)) {
          case stou::SimAlgorithm::RG:
            return stou::simulate_rg(params, seed, grid, sim_p, sim_q, stream);
          case stou::SimAlgorithm::DG:
            return stou::simulate_dg(params, seed, grid, sim_p, sim_q, stream);
          default:
            return stou::simulate_dg_full(params, seed, grid, sim_p, sim_q,
                                          stream);
        }
      }();
      return with_output(sim_out,
                         [&](std::ostream& o) { stou::write_field_csv(field, o); });
    }

    if (fit->parsed()) {
      const stou::FieldData field = stou::read_field_csv(fit_in);
      const stou::SeedFamily family = stou::seed_family_from_string(fit_basis);
      stou::EstimationResult r;
      std::string label;
      if (fit_method == "mm") {
        // MM = single-lag inversion at the smallest nonempty lags.
        r = stou::ls_fit(field, 1, family);
        label = "mm";
      } else if (fit_method == "ls") {
        r = stou::ls_fit(field, fit_lags, family);
        label = "ls";
      } else {
        std::cerr << "error: --method must be mm or ls\n";
        return kExitUsage;
      }
      return with_output(fit_out, [&](std::ostream& o) {
        o << "method,lambda_hat,c_hat,k1,k2,k3,k4,seed_params,invalid_reason\n"
          << label << ',' << stou::format_g17(r.lambda_hat) << ','
          << stou::format_g17(r.c_hat);
        for (double k : r.field_cumulants) o << ',' << stou::format_g17(k);
        o << ',';
        if (r.seed_valid()) {
          bool first = true;
          for (const auto& [name, value] : r.seed_hat->parameters()) {
            o << (first ? "" : ";") << name << '=' << stou::format_g17(value);
            first = false;
          }
          o << ",";
        } else {
          o << ',' << r.invalid_reason;
        }
        o << '\n';
      });
    }

    if (acf->parsed()) {
      const bool piecewise = acf->count("--c1") > 0 || acf->count("--c2") > 0;
      if (piecewise && (acf_c1 <= 0.0 || acf_c2 <= 0.0)) {
        std::cerr << "error: --c1 and --c2 must both be given and positive\n";
        return kExitUsage;
      }
      if (!(acf_step > 0.0)) {
        std::cerr << "error: --step must be positive\n";
        return kExitUsage;
      }
      return with_output(acf_out, [&](std::ostream& o) {
        if (piecewise) {
          o << "dx,acf\n";
          for (double dx = 0.0; dx <= acf_dxmax + 1e-12 * acf_step;
               dx += acf_step)
            o << stou::format_g17(dx) << ','
              << stou::format_g17(
                     stou::acf_spatial_piecewise(acf_lambda, acf_c1, acf_c2, dx))
              << '\n';
        } else {
          const stou::ModelParams params(acf_lambda, acf_c);
          o << "dx,dt,acf\n";
          for (double dx = 0.0; dx <= acf_dxmax + 1e-12 * acf_step;
               dx += acf_step)
            for (double dt = 0.0; dt <= acf_dtmax + 1e-12 * acf_step;
                 dt += acf_step) {
              if (dx == 0.0 && dt == 0.0) continue;
              o << stou::format_g17(dx) << ',' << stou::format_g17(dt) << ','
                << stou::format_g17(stou::acf_st(params, dx, dt)) << '\n';
            }
        }
      });
    }

    if (mse->parsed()) {
      const stou::ModelParams params(mse_lambda, mse_c);
      const bool dg = (mse_alg == "dg");
      if (!dg && mse_alg != "rg") {
        std::cerr << "error: --alg must be rg or dg\n";
        return kExitUsage;
      }
      const auto deltas = parse_sweep(mse_delta);
      const auto Rs = parse_sweep(mse_R);
      return with_output(mse_out, [&](std::ostream& o) {
        o << "alg,delta,R,bias2,variance,mse\n";
        for (double d : deltas)
          for (double R : Rs) {
            const stou::MseParts parts =
                dg ? stou::mse_dg_parts(params, mse_mu, mse_tau, d, R)
                   : stou::mse_rg_parts(params, mse_mu, mse_tau, d, R);
            o << mse_alg << ',' << stou::format_g17(d) << ','
              << stou::format_g17(R) << ',' << stou::format_g17(parts.bias2)
              << ',' << stou::format_g17(parts.variance) << ','
              << stou::format_g17(parts.total()) << '\n';
          }
      });
    }

    if (pred->parsed()) {
      const stou::ModelParams params(pred_lambda, pred_c);
      const stou::LevySeed seed = stou::LevySeed::gaussian(pred_mu, pred_tau);
      const stou::SiteList obs = stou::read_sites_csv(pred_obs);
      const auto target = parse_point(pred_at);
      const auto [mu_star, sigma2_star] =
          stou::predict_gaussian(params, seed, obs, target);
      return with_output(pred_out, [&](std::ostream& o) {
        o << "x,t,mu_star,sigma2_star\n"
          << stou::format_g17(target.first) << ','
          << stou::format_g17(target.second) << ','
          << stou::format_g17(mu_star) << ',' << stou::format_g17(sigma2_star)
          << '\n';
      });
    }

    if (exp->parsed()) {
      stou::ExperimentConfig cfg = stou::parse_experiment_config_file(exp_config);
      if (exp->count("--jobs") > 0) cfg.jobs = exp_jobs;
      if (exp->count("--out") > 0) cfg.out = exp_out;
      const auto rows = stou::run_experiment(cfg);
      return with_output(cfg.out, [&](std::ostream& o) {
        stou::write_experiment_csv(cfg, rows, o);
      });
    }
  } catch (const stou::Error& e) {
    return classify_and_report(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
