#include <doctest.h>

#include <cmath>
#include <stou/simulate.hpp>
#include <vector>

#include "oracles.hpp"

using namespace stou;

TEST_CASE("rectangular kernel: cone indicator and decay") {
  const ModelParams pr(0.8, 1.0);
  const double d = 0.25;
  const auto k = build_kernel_rg(pr, d, d, 5, 5);
  REQUIRE(k.entries.rows() == 11);
  REQUIRE(k.entries.cols() == 6);
  CHECK(k.entries(5, 0) == 1.0);
  for (int i = -5; i <= 5; ++i) {
    for (int j = 0; j <= 5; ++j) {
      const double want =
          (std::abs(i) <= j) ? std::exp(-pr.lambda * j * d) : 0.0;
      CHECK(k.entries(i + 5, j) == doctest::Approx(want).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(build_kernel_rg(pr, 0.0, d, 2, 2), Error);
  CHECK_THROWS_AS(build_kernel_rg(pr, d, d, -1, 2), Error);
}

TEST_CASE("rectangular kernel Riemann sum approaches the ambit integral") {
  // sum h * du * dw -> integral of the kernel = 2 c / lambda^2.
  const ModelParams pr(1.0, 1.0);
  const double d = 0.005;
  const auto k = build_kernel_rg(pr, d, d, 3000, 3000);
  const double riemann = k.entries.sum() * d * d;
  CHECK(std::abs(riemann - 2.0) / 2.0 < 0.005);
}

TEST_CASE("diamond kernel: checkerboard parity pattern") {
  const ModelParams pr(1.0, 1.0);
  const double d = 0.5;
  const auto k = build_kernel_dg(pr, d, 2, 2);
  REQUIRE(k.entries.rows() == 5);
  REQUIRE(k.entries.cols() == 3);
  const double e1 = std::exp(-d), e2 = std::exp(-2.0 * d);
  // Column j holds j+1 nonzero entries at rows with i = j (mod 2).
  Eigen::MatrixXd want(5, 3);
  want << 0, 0, e2,   // i = -2
      0, e1, 0,       // i = -1
      1, 0, e2,       // i =  0
      0, e1, 0,       // i =  1
      0, 0, e2;       // i =  2
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 3; ++c)
      CHECK(k.entries(r, c) == doctest::Approx(want(r, c)).epsilon(1e-14));

  CHECK_THROWS_AS(build_kernel_dg(pr, d, 3, 2), OddTruncation);
  CHECK_THROWS_AS(build_kernel_dg(pr, d, 2, 1), OddTruncation);
}

TEST_CASE("convolve_row: hand-checked sliding correlation") {
  // out[J] = sum_j h[j] w[J+j]
  CHECK(convolve_row({1, 2, 3, 4}, {1, 1}, 3) ==
        std::vector<double>{3, 5, 7});
  CHECK(convolve_row({5, -1, 2}, {1}, 3) == std::vector<double>{5, -1, 2});
  CHECK(convolve_row({1, 0, 0, 2}, {1, 0, 0, 10}, 1) ==
        std::vector<double>{21});

  CHECK_THROWS_AS(convolve_row({1, 2, 3}, {1, 1}, 3), LengthMismatch);
  CHECK_THROWS_AS(convolve_row({1, 2}, {}, 2), LengthMismatch);
  CHECK_THROWS_AS(convolve_row({1}, {1}, 0), LengthMismatch);
}

TEST_CASE("convolve_row: FFT and direct paths agree") {
  auto run = [](Eigen::Index m, int p, double tol) {
    Rng rng({99, static_cast<std::uint64_t>(m)});
    std::vector<double> w(static_cast<std::size_t>(m) + p);
    for (auto& x : w) x = rng.next_uniform() - 0.5;
    std::vector<double> h(static_cast<std::size_t>(p) + 1);
    for (int j = 0; j <= p; ++j) h[j] = std::exp(-0.1 * j);

    const auto got = convolve_row(w, h, m);  // FFT path when m + p >= 256
    for (Eigen::Index J = 0; J < m; ++J) {
      double want = 0.0;
      for (int j = 0; j <= p; ++j) want += h[j] * w[J + j];
      CHECK(std::abs(got[static_cast<std::size_t>(J)] - want) <= tol);
    }
  };
  run(300, 50, 1e-12);
  run(9800, 200, 1e-10);
}

TEST_CASE("simulate_rg: deterministic drift when tau = 0") {
  const ModelParams pr(1.3, 1.0);
  const double d = 0.2;
  GridSpec grid{0, 0, d, d, 4, 5};
  const int p = 6, q = 6;
  const auto f =
      simulate_rg(pr, LevySeed::gaussian(0.25, 0.0), grid, p, q, {1, 0});
  double sum = 0.0;
  for (int j = 0; j <= p; ++j)
    sum += (2.0 * j + 1.0) * d * d * std::exp(-pr.lambda * j * d);
  const double want = 0.25 * sum;
  for (Eigen::Index i = 0; i < grid.n; ++i)
    for (Eigen::Index j = 0; j < grid.m; ++j)
      CHECK(f.values(i, j) == doctest::Approx(want).epsilon(1e-13));
  CHECK(f.valid_count() == grid.n * grid.m);
}

TEST_CASE("simulate_rg matches the brute-force double sum") {
  struct Cfg {
    ModelParams pr;
    GridSpec grid;
    int p, q;
    LevySeed seed;
  };
  const std::vector<Cfg> cfgs = {
      {ModelParams(1.0, 1.0), GridSpec{0, 0, 0.1, 0.1, 6, 6}, 4, 4,
       LevySeed::gaussian(0.2, 0.1)},
      {ModelParams(0.7, 2.0), GridSpec{-1, 2, 0.3, 0.2, 5, 8}, 6, 3,
       LevySeed::gamma(4.3, 21.5)},
      {ModelParams(2.0, 0.5), GridSpec{0, 0, 0.05, 0.1, 1, 1}, 0, 0,
       LevySeed::ig(1.0, 4.8)},
      {ModelParams(1.5, 1.0), GridSpec{0, 0, 0.2, 0.2, 10, 3}, 5, 6,
       LevySeed::nig(20.0, -5.0, 0.27, 0.2)},
  };
  std::uint64_t sid = 0;
  for (const auto& cfg : cfgs) {
    const RngStream stream{123, sid++};
    const auto got =
        simulate_rg(cfg.pr, cfg.seed, cfg.grid, cfg.p, cfg.q, stream);
    const auto want = oracle::brute_force_field(cfg.pr, cfg.seed, cfg.grid,
                                                cfg.p, cfg.q, stream, false);
    for (Eigen::Index i = 0; i < cfg.grid.n; ++i)
      for (Eigen::Index j = 0; j < cfg.grid.m; ++j)
        CHECK(std::abs(got.values(i, j) - want(i, j)) <= 1e-12);
  }
}

TEST_CASE("simulate_rg FFT path matches the brute-force double sum") {
  // m + p = 266 >= 256 exercises the batched-spectrum engine.
  const ModelParams pr(1.0, 1.0);
  GridSpec grid{0, 0, 0.1, 0.1, 3, 256};
  const int p = 10, q = 2;
  const RngStream stream{321, 7};
  const auto seed = LevySeed::gaussian(0.2, 0.1);
  const auto got = simulate_rg(pr, seed, grid, p, q, stream);
  const auto want =
      oracle::brute_force_field(pr, seed, grid, p, q, stream, false);
  for (Eigen::Index i = 0; i < grid.n; ++i)
    for (Eigen::Index j = 0; j < grid.m; ++j)
      CHECK(std::abs(got.values(i, j) - want(i, j)) <= 1e-12);
}

TEST_CASE("simulate_rg is reproducible and stream-sensitive") {
  const ModelParams pr(1.0, 1.0);
  GridSpec grid{0, 0, 0.1, 0.1, 4, 4};
  const auto seed = LevySeed::gaussian(0.2, 0.1);
  const auto a = simulate_rg(pr, seed, grid, 3, 3, {5, 1});
  const auto b = simulate_rg(pr, seed, grid, 3, 3, {5, 1});
  const auto c = simulate_rg(pr, seed, grid, 3, 3, {5, 2});
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.values - c.values).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("simulate_dg: argument validation") {
  const ModelParams pr(1.0, 2.0);
  const auto seed = LevySeed::gaussian(0.2, 0.1);
  GridSpec good{0, 0, 0.2, 0.1, 5, 7};  // dx = c dt
  CHECK_NOTHROW(simulate_dg(pr, seed, good, 2, 2, {1, 0}));
  CHECK_THROWS_AS(simulate_dg(pr, seed, good, 3, 2, {1, 0}), OddTruncation);
  CHECK_THROWS_AS(simulate_dg(pr, seed, good, 2, 3, {1, 0}), OddTruncation);

  GridSpec even = good;
  even.n = 4;
  CHECK_THROWS_AS(simulate_dg(pr, seed, even, 2, 2, {1, 0}), EvenExtent);
  even = good;
  even.m = 6;
  CHECK_THROWS_AS(simulate_dg(pr, seed, even, 2, 2, {1, 0}), EvenExtent);

  GridSpec mismatch = good;
  mismatch.dx = 0.15;
  CHECK_THROWS_AS(simulate_dg(pr, seed, mismatch, 2, 2, {1, 0}), GridMismatch);
}

TEST_CASE("simulate_dg: checkerboard mask and drift value") {
  const ModelParams pr(0.9, 1.5);
  const double dt = 0.2;
  GridSpec grid{0, 0, 1.5 * dt, dt, 5, 7};
  const int p = 4, q = 4;
  const auto f =
      simulate_dg(pr, LevySeed::gaussian(0.3, 0.0), grid, p, q, {2, 0});

  double sum = 0.0;
  for (int j = 0; j <= p; ++j)
    sum += (j + 1.0) * std::exp(-pr.lambda * j * dt);
  const double want = 0.3 * 2.0 * pr.c * dt * dt * sum;

  for (Eigen::Index i = 0; i < grid.n; ++i) {
    for (Eigen::Index j = 0; j < grid.m; ++j) {
      CHECK(f.mask(i, j) == ((i + j) % 2 == 0));
      if (f.mask(i, j))
        CHECK(f.values(i, j) == doctest::Approx(want).epsilon(1e-13));
    }
  }
  CHECK(f.valid_count() == (grid.n * grid.m + 1) / 2);
}

TEST_CASE("simulate_dg matches the brute-force double sum") {
  struct Cfg {
    ModelParams pr;
    GridSpec grid;
    int p, q;
    LevySeed seed;
  };
  const std::vector<Cfg> cfgs = {
      {ModelParams(1.0, 1.0), GridSpec{0, 0, 0.1, 0.1, 5, 7}, 4, 4,
       LevySeed::gaussian(0.2, 0.1)},
      {ModelParams(0.7, 2.0), GridSpec{1, -1, 0.4, 0.2, 7, 5}, 6, 2,
       LevySeed::gamma(4.3, 21.5)},
      {ModelParams(1.5, 0.5), GridSpec{0, 0, 0.1, 0.2, 3, 9}, 2, 6,
       LevySeed::ig(1.0, 4.8)},
  };
  std::uint64_t sid = 50;
  for (const auto& cfg : cfgs) {
    const RngStream stream{123, sid++};
    const auto got =
        simulate_dg(cfg.pr, cfg.seed, cfg.grid, cfg.p, cfg.q, stream);
    const auto want = oracle::brute_force_field(cfg.pr, cfg.seed, cfg.grid,
                                                cfg.p, cfg.q, stream, true);
    for (Eigen::Index i = 0; i < cfg.grid.n; ++i)
      for (Eigen::Index j = 0; j < cfg.grid.m; ++j)
        if (got.mask(i, j))
          CHECK(std::abs(got.values(i, j) - want(i, j)) <= 1e-12);
  }
}

TEST_CASE("simulate_dg_full: full mask, half-spacing subsample") {
  const ModelParams pr(1.0, 1.0);
  GridSpec grid{0, 0, 0.2, 0.2, 5, 5};
  const auto seed = LevySeed::gaussian(0.2, 0.1);
  const RngStream stream{77, 0};
  const auto full = simulate_dg_full(pr, seed, grid, 4, 4, stream);
  CHECK(full.valid_count() == grid.n * grid.m);
  CHECK(full.grid.dx == grid.dx);
  CHECK(full.grid.dt == grid.dt);

  GridSpec fine{0, 0, 0.1, 0.1, 9, 9};
  const auto inner = simulate_dg(pr, seed, fine, 4, 4, stream);
  for (Eigen::Index i = 0; i < grid.n; ++i) {
    for (Eigen::Index j = 0; j < grid.m; ++j) {
      CHECK(inner.mask(2 * i, 2 * j));  // kept points are parity-valid
      CHECK(full.values(i, j) == inner.values(2 * i, 2 * j));
    }
  }
}

TEST_CASE("simulate_dg_full drift equals the half-spacing diamond sum") {
  const ModelParams pr(1.1, 1.0);
  const double d = 0.3;
  GridSpec grid{0, 0, d, d, 5, 5};
  const int p = 6, q = 6;
  const auto f =
      simulate_dg_full(pr, LevySeed::gaussian(0.4, 0.0), grid, p, q, {3, 3});
  const double half = d / 2.0;
  double sum = 0.0;
  for (int j = 0; j <= p; ++j)
    sum += (j + 1.0) * std::exp(-pr.lambda * j * half);
  const double want = 0.4 * 2.0 * pr.c * half * half * sum;
  for (Eigen::Index i = 0; i < grid.n; ++i)
    for (Eigen::Index j = 0; j < grid.m; ++j)
      CHECK(f.values(i, j) == doctest::Approx(want).epsilon(1e-13));
}
