#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stou/experiment.hpp>
#include <stou/io.hpp>
#include <stou/simulate.hpp>

using namespace stou;

TEST_CASE("format_g17 round-trips doubles exactly") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 1e300, 0.0, -0.0, 123456.789}) {
    const std::string s = format_g17(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("field CSV round trip is bit exact") {
  const ModelParams pr(1.0, 1.0);
  GridSpec grid{0.5, -1.0, 0.1, 0.2, 6, 5};
  const auto f =
      simulate_rg(pr, LevySeed::gaussian(0.2, 0.1), grid, 4, 4, {21, 0});

  std::stringstream ss;
  write_field_csv(f, ss);

  // Header plus one row per valid point.
  std::string header;
  std::getline(ss, header);
  CHECK(header == "x,t,value");
  long rows = 0;
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty()) ++rows;
  CHECK(rows == f.valid_count());

  ss.clear();
  ss.seekg(0);
  const auto g = read_field_csv(ss);
  CHECK(g.grid.n == grid.n);
  CHECK(g.grid.m == grid.m);
  CHECK(g.grid.x0 == doctest::Approx(grid.x0).epsilon(1e-12));
  CHECK(g.grid.t0 == doctest::Approx(grid.t0).epsilon(1e-12));
  CHECK(g.grid.dx == doctest::Approx(grid.dx).epsilon(1e-12));
  CHECK(g.grid.dt == doctest::Approx(grid.dt).epsilon(1e-12));
  for (Eigen::Index i = 0; i < grid.n; ++i)
    for (Eigen::Index j = 0; j < grid.m; ++j) {
      CHECK(g.mask(i, j));
      CHECK(g.values(i, j) == f.values(i, j));  // bit exact
    }
}

TEST_CASE("diamond fields write only valid points and read back masked") {
  const ModelParams pr(1.0, 1.0);
  GridSpec grid{0, 0, 0.1, 0.1, 5, 7};
  const auto f =
      simulate_dg(pr, LevySeed::gaussian(0.2, 0.1), grid, 4, 4, {22, 0});
  REQUIRE(f.valid_count() == 18);  // ceil(35 / 2)

  std::stringstream ss;
  write_field_csv(f, ss);
  const auto g = read_field_csv(ss);
  CHECK(g.grid.n == grid.n);
  CHECK(g.grid.m == grid.m);
  for (Eigen::Index i = 0; i < grid.n; ++i)
    for (Eigen::Index j = 0; j < grid.m; ++j) {
      CHECK(g.mask(i, j) == f.mask(i, j));
      if (f.mask(i, j)) CHECK(g.values(i, j) == f.values(i, j));
    }
}

TEST_CASE("read_field_csv: single point and degenerate axes") {
  std::stringstream ss("x,t,value\n1.5,2.5,3.5\n");
  const auto f = read_field_csv(ss);
  CHECK(f.grid.n == 1);
  CHECK(f.grid.m == 1);
  CHECK(f.grid.x0 == 1.5);
  CHECK(f.grid.t0 == 2.5);
  CHECK(f.grid.dx == 1.0);  // spacing defaults to 1 on single-coordinate axes
  CHECK(f.grid.dt == 1.0);
  CHECK(f.values(0, 0) == 3.5);
}

TEST_CASE("read_field_csv: error reporting") {
  SUBCASE("wrong header") {
    std::stringstream ss("a,b,c\n1,2,3\n");
    CHECK_THROWS_AS(read_field_csv(ss), ParseError);
  }
  SUBCASE("malformed number") {
    std::stringstream ss("x,t,value\n1,2,zap\n");
    CHECK_THROWS_AS(read_field_csv(ss), ParseError);
  }
  SUBCASE("missing column") {
    std::stringstream ss("x,t,value\n1,2\n");
    CHECK_THROWS_AS(read_field_csv(ss), ParseError);
  }
  SUBCASE("non-finite value") {
    std::stringstream ss("x,t,value\n1,2,inf\n");
    CHECK_THROWS_AS(read_field_csv(ss), ParseError);
  }
  SUBCASE("duplicate point") {
    std::stringstream ss("x,t,value\n1,2,3\n1,2,4\n");
    CHECK_THROWS_AS(read_field_csv(ss), ParseError);
  }
  SUBCASE("empty input") {
    std::stringstream ss("");
    CHECK_THROWS_AS(read_field_csv(ss), ParseError);
  }
  SUBCASE("non-uniform spacing") {
    std::stringstream ss(
        "x,t,value\n0,0,1\n1,0,1\n2.5,0,1\n0,1,1\n1,1,1\n2.5,1,1\n");
    CHECK_THROWS_AS(read_field_csv(ss), NonUniformGrid);
  }
}

TEST_CASE("read_sites_csv accepts irregular locations") {
  std::stringstream ss("x,t,value\n0,0,1\n0.37,0.11,2\n-4,9,3\n");
  const auto sites = read_sites_csv(ss);
  REQUIRE(sites.sites.size() == 3);
  CHECK(sites.sites[1].first == 0.37);
  CHECK(sites.sites[1].second == 0.11);
  CHECK(sites.values[2] == 3.0);
}

TEST_CASE("experiment config parsing") {
  std::stringstream ss(
      "# comment line\n"
      "replicates = 4\n"
      "lambda = 1.5   # trailing comment\n"
      "c = 2.0\n"
      "basis = gamma\n"
      "basis_params = alpha=4.3, beta=21.5\n"
      "dx = 0.2\n"
      "dt = 0.1\n"
      "nx = 21\n"
      "nt = 31\n"
      "p = 40\n"
      "q = 40\n"
      "algorithm = dg\n"
      "methods = mm,ls\n"
      "n_lags = 5\n"
      "master_seed = 7\n"
      "jobs = 2\n");
  const auto cfg = parse_experiment_config(ss);
  CHECK(cfg.replicates == 4);
  CHECK(cfg.params.lambda == 1.5);
  CHECK(cfg.params.c == 2.0);
  CHECK(cfg.seed.family() == SeedFamily::Gamma);
  CHECK(cfg.seed.as_gamma().alpha == 4.3);
  CHECK(cfg.grid.dx == 0.2);
  CHECK(cfg.grid.n == 21);
  CHECK(cfg.grid.m == 31);
  CHECK(cfg.algorithm == SimAlgorithm::DG);
  CHECK(cfg.run_mm);
  CHECK(cfg.run_ls);
  CHECK(cfg.n_lags == 5);
  CHECK(cfg.master_seed == 7);
  CHECK(cfg.jobs == 2);

  std::stringstream bad("unknown_key = 3\n");
  CHECK_THROWS_AS(parse_experiment_config(bad), ParseError);
  std::stringstream bad2("lambda\n");
  CHECK_THROWS_AS(parse_experiment_config(bad2), ParseError);
  std::stringstream bad3("basis = nig\nbasis_params = alpha=20\n");
  CHECK_THROWS_AS(parse_experiment_config(bad3), ParseError);
}

TEST_CASE("kv-list and seed construction") {
  const auto kv = parse_kv_list("mu=0.2, tau=0.1");
  CHECK(kv.at("mu") == 0.2);
  CHECK(kv.at("tau") == 0.1);
  CHECK_THROWS_AS(parse_kv_list("mu:0.2"), ParseError);
  const auto s = make_seed(SeedFamily::Gaussian, kv);
  CHECK(s.as_gaussian().mu == 0.2);
  CHECK_THROWS_AS(make_seed(SeedFamily::IG, kv), ParseError);
}

TEST_CASE("run_experiment rows are independent of the job count") {
  ExperimentConfig cfg;
  cfg.replicates = 4;
  cfg.grid = GridSpec{0, 0, 0.1, 0.1, 21, 21};
  cfg.p = 30;
  cfg.q = 30;
  cfg.n_lags = 3;
  cfg.master_seed = 11;

  cfg.jobs = 1;
  const auto serial = run_experiment(cfg);
  cfg.jobs = 3;
  const auto parallel = run_experiment(cfg);

  REQUIRE(serial.size() == 8);  // 4 replicates x {mm, ls}
  REQUIRE(parallel.size() == serial.size());
  for (std::size_t k = 0; k < serial.size(); ++k) {
    CHECK(serial[k].replicate == parallel[k].replicate);
    CHECK(serial[k].stream_id == parallel[k].stream_id);
    CHECK(serial[k].method == parallel[k].method);
    REQUIRE(serial[k].fit_ok);
    REQUIRE(parallel[k].fit_ok);
    CHECK(serial[k].result.lambda_hat == parallel[k].result.lambda_hat);
    CHECK(serial[k].result.c_hat == parallel[k].result.c_hat);
    CHECK(serial[k].result.field_cumulants ==
          parallel[k].result.field_cumulants);
  }

  // The CSV writer emits one data row per table row plus summary comments.
  std::stringstream out;
  write_experiment_csv(cfg, serial, out);
  std::string line;
  long data_rows = 0, summaries = 0;
  std::getline(out, line);
  CHECK(line ==
        "replicate,stream_id,method,lambda_hat,c_hat,k1,k2,k3,k4,"
        "seed_params,invalid_reason,seconds");
  while (std::getline(out, line)) {
    if (line.rfind("# summary", 0) == 0)
      ++summaries;
    else if (!line.empty())
      ++data_rows;
  }
  CHECK(data_rows == 8);
  // lambda_hat, c_hat, mu, tau for each of mm and ls.
  CHECK(summaries == 8);
}
