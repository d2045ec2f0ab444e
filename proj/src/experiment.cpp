#include "stou/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "stou/io.hpp"

namespace stou {

SimAlgorithm sim_algorithm_from_string(const std::string& name) {
  if (name == "rg") return SimAlgorithm::RG;
  if (name == "dg") return SimAlgorithm::DG;
  if (name == "dg-full" || name == "dg_full") return SimAlgorithm::DG_FULL;
  throw ParseError("unknown algorithm: " + name);
}

std::string to_string(SimAlgorithm alg) {
  switch (alg) {
    case SimAlgorithm::RG: return "rg";
    case SimAlgorithm::DG: return "dg";
    case SimAlgorithm::DG_FULL: return "dg-full";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParseError("config: bad numeric value for " + key + ": " + v);
  }
}

long parse_long(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const long d = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParseError("config: bad integer value for " + key + ": " + v);
  }
}

}  // namespace

std::map<std::string, double> parse_kv_list(const std::string& text) {
  std::map<std::string, double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected name=value in parameter list: " + item);
    out[trim(item.substr(0, eq))] =
        parse_double(trim(item.substr(eq + 1)), item);
  }
  return out;
}

LevySeed make_seed(SeedFamily family, const std::map<std::string, double>& kv) {
  auto get = [&](const char* name) {
    const auto it = kv.find(name);
    if (it == kv.end())
      throw ParseError(std::string("missing basis parameter: ") + name);
    return it->second;
  };
  switch (family) {
    case SeedFamily::Gaussian:
      return LevySeed::gaussian(get("mu"), get("tau"));
    case SeedFamily::IG:
      return LevySeed::ig(get("delta"), get("gamma"));
    case SeedFamily::NIG:
      return LevySeed::nig(get("alpha"), get("beta"), get("mu"), get("delta"));
    case SeedFamily::Gamma:
      return LevySeed::gamma(get("alpha"), get("beta"));
  }
  throw ParseError("unknown basis family");
}

ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig cfg;
  // Collect raw keys first: the seed needs family and parameters together.
  std::map<std::string, std::string> kv;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(line_no) +
                       ": expected key = value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  SeedFamily family = SeedFamily::Gaussian;
  std::string basis_params = "mu=0.2,tau=0.1";
  for (const auto& [key, value] : kv) {
    if (key == "replicates")
      cfg.replicates = static_cast<int>(parse_long(value, key));
    else if (key == "lambda")
      cfg.params = ModelParams(parse_double(value, key), cfg.params.c);
    else if (key == "c")
      cfg.params = ModelParams(cfg.params.lambda, parse_double(value, key));
    else if (key == "basis")
      family = seed_family_from_string(value);
    else if (key == "basis_params")
      basis_params = value;
    else if (key == "x0")
      cfg.grid.x0 = parse_double(value, key);
    else if (key == "t0")
      cfg.grid.t0 = parse_double(value, key);
    else if (key == "dx")
      cfg.grid.dx = parse_double(value, key);
    else if (key == "dt")
      cfg.grid.dt = parse_double(value, key);
    else if (key == "nx")
      cfg.grid.n = parse_long(value, key);
    else if (key == "nt")
      cfg.grid.m = parse_long(value, key);
    else if (key == "p")
      cfg.p = static_cast<int>(parse_long(value, key));
    else if (key == "q")
      cfg.q = static_cast<int>(parse_long(value, key));
    else if (key == "algorithm")
      cfg.algorithm = sim_algorithm_from_string(value);
    else if (key == "methods") {
      cfg.run_mm = value.find("mm") != std::string::npos;
      cfg.run_ls = value.find("ls") != std::string::npos;
      if (!cfg.run_mm && !cfg.run_ls)
        throw ParseError("config: methods must include mm and/or ls");
    } else if (key == "n_lags")
      cfg.n_lags = static_cast<int>(parse_long(value, key));
    else if (key == "master_seed")
      cfg.master_seed = static_cast<std::uint64_t>(parse_long(value, key));
    else if (key == "jobs")
      cfg.jobs = static_cast<int>(parse_long(value, key));
    else if (key == "out")
      cfg.out = value;
    else
      throw ParseError("config: unknown key: " + key);
  }
  cfg.seed = make_seed(family, parse_kv_list(basis_params));
  if (cfg.replicates < 1) throw ParseError("config: replicates must be >= 1");
  if (cfg.jobs < 1) throw ParseError("config: jobs must be >= 1");
  validate_grid(cfg.grid);
  return cfg;
}

ExperimentConfig parse_experiment_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config: " + path);
  return parse_experiment_config(in);
}

namespace {

int smallest_nonempty_lag(const FieldData& field, Axis axis) {
  const Eigen::Index extent =
      (axis == Axis::Space) ? field.grid.n : field.grid.m;
  for (int lag = 1; lag < extent; ++lag) {
    const Eigen::Index n = field.grid.n;
    const Eigen::Index m = field.grid.m;
    if (axis == Axis::Space) {
      for (Eigen::Index j = 0; j < m; ++j)
        for (Eigen::Index i = 0; i + lag < n; ++i)
          if (field.mask(i, j) && field.mask(i + lag, j)) return lag;
    } else {
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j + lag < m; ++j)
          if (field.mask(i, j) && field.mask(i, j + lag)) return lag;
    }
  }
  throw NoPairs("no axis-aligned pairs exist at any lag");
}

FieldData simulate_for(const ExperimentConfig& cfg, RngStream stream) {
  switch (cfg.algorithm) {
    case SimAlgorithm::RG:
      return simulate_rg(cfg.params, cfg.seed, cfg.grid, cfg.p, cfg.q, stream);
    case SimAlgorithm::DG:
      return simulate_dg(cfg.params, cfg.seed, cfg.grid, cfg.p, cfg.q, stream);
    case SimAlgorithm::DG_FULL:
      return simulate_dg_full(cfg.params, cfg.seed, cfg.grid, cfg.p, cfg.q,
                              stream);
  }
  throw Error("unknown algorithm");
}

ReplicateRow fit_one(const ExperimentConfig& cfg, const FieldData& field,
                     int replicate, std::uint64_t stream_id, FitMethod method) {
  ReplicateRow row;
  row.replicate = replicate;
  row.stream_id = stream_id;
  row.method = method;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (method == FitMethod::MM) {
      const int lt = smallest_nonempty_lag(field, Axis::Time);
      const int lx = smallest_nonempty_lag(field, Axis::Space);
      row.result = mm_fit(field, lt * field.grid.dt, lx * field.grid.dx,
                          cfg.seed.family());
    } else {
      row.result = ls_fit(field, cfg.n_lags, cfg.seed.family());
    }
    row.fit_ok = true;
  } catch (const Error& e) {
    row.failure_reason = e.what();
  }
  row.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return row;
}

}  // namespace

std::vector<ReplicateRow> run_experiment(const ExperimentConfig& cfg) {
  const int methods_per_rep = (cfg.run_mm ? 1 : 0) + (cfg.run_ls ? 1 : 0);
  std::vector<std::vector<ReplicateRow>> per_rep(
      static_cast<std::size_t>(cfg.replicates));

  auto worker = [&](int first, int step) {
    for (int rep = first; rep < cfg.replicates; rep += step) {
      const std::uint64_t stream_id = static_cast<std::uint64_t>(rep);
      auto& rows = per_rep[static_cast<std::size_t>(rep)];
      rows.reserve(static_cast<std::size_t>(methods_per_rep));
      try {
        const FieldData field =
            simulate_for(cfg, RngStream{cfg.master_seed, stream_id});
        if (cfg.run_mm)
          rows.push_back(fit_one(cfg, field, rep, stream_id, FitMethod::MM));
        if (cfg.run_ls)
          rows.push_back(fit_one(cfg, field, rep, stream_id, FitMethod::LS));
      } catch (const Error& e) {
        // Simulation-level failure: one row per requested method.
        ReplicateRow row;
        row.replicate = rep;
        row.stream_id = stream_id;
        row.failure_reason = e.what();
        if (cfg.run_mm) {
          row.method = FitMethod::MM;
          rows.push_back(row);
        }
        if (cfg.run_ls) {
          row.method = FitMethod::LS;
          rows.push_back(row);
        }
      }
    }
  };

  const int jobs = std::min(cfg.jobs, cfg.replicates);
  if (jobs <= 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker, j, jobs);
    for (auto& t : pool) t.join();
  }

  std::vector<ReplicateRow> rows;
  rows.reserve(static_cast<std::size_t>(cfg.replicates * methods_per_rep));
  for (auto& group : per_rep)
    for (auto& row : group) rows.push_back(std::move(row));
  return rows;
}

namespace {

std::string method_name(FitMethod m) { return m == FitMethod::MM ? "mm" : "ls"; }

struct SummaryAcc {
  std::vector<double> values;
  long invalid = 0;
};

double percentile(std::vector<double> v, double pct) {
  std::sort(v.begin(), v.end());
  const double idx = pct * (static_cast<double>(v.size()) - 1.0);
  const std::size_t lo = static_cast<std::size_t>(std::floor(idx));
  const std::size_t hi = static_cast<std::size_t>(std::ceil(idx));
  const double frac = idx - static_cast<double>(lo);
  return v[lo] + frac * (v[hi] - v[lo]);
}

}  // namespace

void write_experiment_csv(const ExperimentConfig& cfg,
                          const std::vector<ReplicateRow>& rows,
                          std::ostream& out) {
  out << "replicate,stream_id,method,lambda_hat,c_hat,"
         "k1,k2,k3,k4,seed_params,invalid_reason,seconds\n";
  // method -> parameter -> accumulated estimates
  std::map<std::string, std::map<std::string, SummaryAcc>> summary;
  for (const auto& row : rows) {
    const std::string method = method_name(row.method);
    out << row.replicate << ',' << row.stream_id << ',' << method << ',';
    if (row.fit_ok) {
      const auto& r = row.result;
      out << format_g17(r.lambda_hat) << ',' << format_g17(r.c_hat) << ','
          << format_g17(r.field_cumulants[0]) << ','
          << format_g17(r.field_cumulants[1]) << ','
          << format_g17(r.field_cumulants[2]) << ','
          << format_g17(r.field_cumulants[3]) << ',';
      summary[method]["lambda_hat"].values.push_back(r.lambda_hat);
      summary[method]["c_hat"].values.push_back(r.c_hat);
      if (r.seed_valid()) {
        const auto params = r.seed_hat->parameters();
        std::string cell;
        for (const auto& [name, value] : params) {
          if (!cell.empty()) cell += ';';
          cell += name + "=" + format_g17(value);
          summary[method][name].values.push_back(value);
        }
        out << cell << ",,";
      } else {
        for (const auto& [name, value] : cfg.seed.parameters()) {
          (void)value;
          ++summary[method][name].invalid;
        }
        out << ',' << row.result.invalid_reason << ',';
      }
      out << format_g17(row.seconds) << '\n';
    } else {
      summary[method]["lambda_hat"].invalid += 1;
      summary[method]["c_hat"].invalid += 1;
      for (const auto& [name, value] : cfg.seed.parameters()) {
        (void)value;
        ++summary[method][name].invalid;
      }
      out << ",,,,,,," << row.failure_reason << ','
          << format_g17(row.seconds) << '\n';
    }
  }
  for (const auto& [method, params] : summary) {
    for (const auto& [name, acc] : params) {
      out << "# summary method=" << method << " param=" << name;
      if (!acc.values.empty()) {
        out << " n=" << acc.values.size()
            << " median=" << format_g17(percentile(acc.values, 0.5))
            << " iqr="
            << format_g17(percentile(acc.values, 0.75) -
                          percentile(acc.values, 0.25));
      } else {
        out << " n=0";
      }
      out << " invalid=" << acc.invalid << '\n';
    }
  }
}

}  // namespace stou
