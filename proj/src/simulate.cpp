#include "stou/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "fft_utils.hpp"

namespace stou {

namespace {

constexpr std::size_t kFftThreshold = 256;

double kernel_value(const ModelParams& params, double u, double w) {
  if (std::abs(u) > params.c * w) return 0.0;
  return std::exp(-params.lambda * w);
}

}  // namespace

KernelMatrix build_kernel_rg(const ModelParams& params, double du, double dw,
                             int p, int q) {
  if (!(du > 0.0) || !(dw > 0.0)) throw Error("build_kernel_rg: du, dw must be > 0");
  if (p < 0 || q < 0) throw Error("build_kernel_rg: p, q must be >= 0");
  KernelMatrix k;
  k.du = du;
  k.dw = dw;
  k.p = p;
  k.q = q;
  k.layout = KernelLayout::RG;
  k.entries.setZero(2 * q + 1, p + 1);
  for (int i = -q; i <= q; ++i)
    for (int j = 0; j <= p; ++j)
      k.entries(i + q, j) = kernel_value(params, i * du, j * dw);
  return k;
}

KernelMatrix build_kernel_dg(const ModelParams& params, double dt, int p, int q) {
  if (!(dt > 0.0)) throw Error("build_kernel_dg: dt must be > 0");
  if (p < 0 || q < 0) throw Error("build_kernel_dg: p, q must be >= 0");
  if (p % 2 != 0 || q % 2 != 0)
    throw OddTruncation("build_kernel_dg: p and q must be even");
  const double du = params.c * dt;
  KernelMatrix k;
  k.du = du;
  k.dw = dt;
  k.p = p;
  k.q = q;
  k.layout = KernelLayout::DG;
  k.entries.setZero(2 * q + 1, p + 1);
  for (int i = -q; i <= q; ++i) {
    for (int j = 0; j <= p; ++j) {
      // 1-based row + column parity: (i+q+1) + (j+1) even <=> i+j even
      // (q is even).
      if (((i + j) % 2 + 2) % 2 != 0) continue;
      k.entries(i + q, j) = kernel_value(params, i * du, j * dt);
    }
  }
  return k;
}

namespace {

std::vector<double> correlate_direct(const std::vector<double>& w_row,
                                     const std::vector<double>& h_row,
                                     Eigen::Index m) {
  std::vector<double> out(static_cast<std::size_t>(m), 0.0);
  const std::size_t p1 = h_row.size();
  for (Eigen::Index J = 0; J < m; ++J) {
    double acc = 0.0;
    for (std::size_t j = 0; j < p1; ++j) acc += h_row[j] * w_row[J + j];
    out[static_cast<std::size_t>(J)] = acc;
  }
  return out;
}

std::vector<double> correlate_fft(const std::vector<double>& w_row,
                                  const std::vector<double>& h_row,
                                  Eigen::Index m) {
  const std::size_t n = w_row.size();
  auto wf = detail::rfft(w_row, n);
  auto hf = detail::rfft(h_row, n);
  for (std::size_t k = 0; k < wf.size(); ++k) wf[k] *= std::conj(hf[k]);
  auto full = detail::irfft(wf, n);
  full.resize(static_cast<std::size_t>(m));
  return full;
}

}  // namespace

std::vector<double> convolve_row(const std::vector<double>& w_row,
                                 const std::vector<double>& h_row,
                                 Eigen::Index m) {
  if (m < 1) throw LengthMismatch("convolve_row: m must be >= 1");
  if (h_row.empty()) throw LengthMismatch("convolve_row: empty kernel row");
  const std::size_t p = h_row.size() - 1;
  if (w_row.size() != static_cast<std::size_t>(m) + p)
    throw LengthMismatch("convolve_row: noise row must have length m + p");
  if (w_row.size() >= kFftThreshold) return correlate_fft(w_row, h_row, m);
  return correlate_direct(w_row, h_row, m);
}

namespace {

// Shared convolution stage of both grid algorithms: each output row I sums
// the cross-correlations of noise rows I..I+2q with the matching kernel rows,
// then is reversed so the column index runs in ascending time (noise columns
// are generated with time decreasing to the right).
Eigen::MatrixXd convolve_field(const Eigen::MatrixXd& noise,
                               const KernelMatrix& kernel, Eigen::Index n,
                               Eigen::Index m) {
  const Eigen::Index rows_k = kernel.entries.rows();  // 2q+1
  const Eigen::Index cols_n = noise.cols();           // m+p
  Eigen::MatrixXd values(n, m);

  if (static_cast<std::size_t>(cols_n) >= kFftThreshold) {
    // Precompute the spectrum of every noise row and kernel row once, then
    // accumulate per output row in the frequency domain (one inverse FFT per
    // output row instead of 2q+1 full correlations).
    const std::size_t N = static_cast<std::size_t>(cols_n);
    std::vector<std::vector<std::complex<double>>> wspec(
        static_cast<std::size_t>(noise.rows()));
    std::vector<double> buf(N);
    for (Eigen::Index k = 0; k < noise.rows(); ++k) {
      for (Eigen::Index l = 0; l < cols_n; ++l)
        buf[static_cast<std::size_t>(l)] = noise(k, l);
      wspec[static_cast<std::size_t>(k)] = detail::rfft(buf, N);
    }
    std::vector<std::vector<std::complex<double>>> hspec(
        static_cast<std::size_t>(rows_k));
    for (Eigen::Index i = 0; i < rows_k; ++i) {
      std::vector<double> hrow(static_cast<std::size_t>(kernel.entries.cols()));
      for (Eigen::Index j = 0; j < kernel.entries.cols(); ++j)
        hrow[static_cast<std::size_t>(j)] = kernel.entries(i, j);
      auto spec = detail::rfft(hrow, N);
      for (auto& z : spec) z = std::conj(z);
      hspec[static_cast<std::size_t>(i)] = spec;
    }
    const std::size_t nbins = N / 2 + 1;
    std::vector<std::complex<double>> acc(nbins);
    for (Eigen::Index I = 0; I < n; ++I) {
      std::fill(acc.begin(), acc.end(), std::complex<double>(0.0, 0.0));
      for (Eigen::Index i = 0; i < rows_k; ++i) {
        const auto& ws = wspec[static_cast<std::size_t>(I + i)];
        const auto& hs = hspec[static_cast<std::size_t>(i)];
        for (std::size_t b = 0; b < nbins; ++b) acc[b] += ws[b] * hs[b];
      }
      const auto row = detail::irfft(acc, N);
      for (Eigen::Index J = 0; J < m; ++J)
        values(I, m - 1 - J) = row[static_cast<std::size_t>(J)];
    }
    return values;
  }

  const Eigen::Index p = kernel.entries.cols() - 1;
  for (Eigen::Index I = 0; I < n; ++I) {
    for (Eigen::Index J = 0; J < m; ++J) {
      double acc = 0.0;
      for (Eigen::Index i = 0; i < rows_k; ++i)
        for (Eigen::Index j = 0; j <= p; ++j)
          acc += kernel.entries(i, j) * noise(I + i, J + j);
      values(I, m - 1 - J) = acc;
    }
  }
  return values;
}

}  // namespace

FieldData simulate_rg(const ModelParams& params, const LevySeed& seed,
                      const GridSpec& grid, int p, int q, RngStream rng) {
  validate_grid(grid);
  if (p < 0 || q < 0) throw Error("simulate_rg: p, q must be >= 0");
  const KernelMatrix kernel = build_kernel_rg(params, grid.dx, grid.dt, p, q);

  const Eigen::Index rows = grid.n + 2 * q;
  const Eigen::Index cols = grid.m + p;
  const double area = grid.dx * grid.dt;
  Rng engine(rng);
  Eigen::MatrixXd noise(rows, cols);
  for (Eigen::Index k = 0; k < rows; ++k)
    for (Eigen::Index l = 0; l < cols; ++l)
      noise(k, l) = sample_increment_one(seed, area, engine);

  return FieldData(grid, convolve_field(noise, kernel, grid.n, grid.m));
}

FieldData simulate_dg(const ModelParams& params, const LevySeed& seed,
                      const GridSpec& grid, int p, int q, RngStream rng) {
  validate_grid(grid);
  if (p < 0 || q < 0) throw Error("simulate_dg: p, q must be >= 0");
  if (p % 2 != 0 || q % 2 != 0)
    throw OddTruncation("simulate_dg: p and q must be even");
  if (grid.n % 2 == 0 || grid.m % 2 == 0)
    throw EvenExtent("simulate_dg: n and m must be odd");
  const double want_dx = params.c * grid.dt;
  if (std::abs(grid.dx - want_dx) >
      1e-12 * std::max(std::abs(grid.dx), std::abs(want_dx)))
    throw GridMismatch("simulate_dg: grid.dx must equal c * grid.dt");

  const KernelMatrix kernel = build_kernel_dg(params, grid.dt, p, q);

  const Eigen::Index rows = grid.n + 2 * q;
  const Eigen::Index cols = grid.m + p;
  // Each diamond has the area of the [0, 2c*dt] x [0, dt] rectangle.
  const double area = 2.0 * params.c * grid.dt * grid.dt;
  Rng engine(rng);
  Eigen::MatrixXd noise(rows, cols);
  for (Eigen::Index k = 0; k < rows; ++k)
    for (Eigen::Index l = 0; l < cols; ++l)
      noise(k, l) = ((k + l) % 2 == 0)  // 1-based (k+1)+(l+1) even
                        ? sample_increment_one(seed, area, engine)
                        : 0.0;

  Eigen::MatrixXd values = convolve_field(noise, kernel, grid.n, grid.m);
  BoolMatrix mask(grid.n, grid.m);
  for (Eigen::Index i = 0; i < grid.n; ++i)
    for (Eigen::Index j = 0; j < grid.m; ++j) mask(i, j) = ((i + j) % 2 == 0);
  return FieldData(grid, std::move(values), std::move(mask));
}

FieldData simulate_dg_full(const ModelParams& params, const LevySeed& seed,
                           const GridSpec& grid, int p, int q, RngStream rng) {
  validate_grid(grid);
  GridSpec fine;
  fine.x0 = grid.x0;
  fine.t0 = grid.t0;
  fine.dx = grid.dx / 2.0;
  fine.dt = grid.dt / 2.0;
  fine.n = 2 * grid.n - 1;
  fine.m = 2 * grid.m - 1;
  const FieldData inner = simulate_dg(params, seed, fine, p, q, rng);

  Eigen::MatrixXd values(grid.n, grid.m);
  for (Eigen::Index i = 0; i < grid.n; ++i)
    for (Eigen::Index j = 0; j < grid.m; ++j)
      values(i, j) = inner.values(2 * i, 2 * j);
  return FieldData(grid, std::move(values));
}

}  // namespace stou
