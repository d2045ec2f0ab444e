#pragma once

#include <vector>

#include "stou/core.hpp"
#include "stou/levy.hpp"

namespace stou {

enum class KernelLayout { RG, DG };

/// Truncated, discretized kernel h(u_i, w_j) = 1_{|u_i| <= c w_j} e^{-lambda w_j}
/// with u_i = i*du for i = -q..q (rows) and w_j = j*dw for j = 0..p (columns).
/// The DG layout additionally zeroes every entry whose 1-based row+column index
/// is odd, producing the checkerboard kernel of the diamond-grid algorithm.
struct KernelMatrix {
  double du = 0.0;
  double dw = 0.0;
  int p = 0;
  int q = 0;
  Eigen::MatrixXd entries;  // (2q+1) x (p+1)
  KernelLayout layout = KernelLayout::RG;
};

KernelMatrix build_kernel_rg(const ModelParams& params, double du, double dw,
                             int p, int q);

/// Diamond-grid kernel: spacing forced to du = c*dt, dw = dt; p and q must be
/// even. Throws OddTruncation otherwise.
KernelMatrix build_kernel_dg(const ModelParams& params, double dt, int p, int q);

/// Sliding cross-correlation: out[J] = sum_{j=0..p} h_row[j] * w_row[J+j]
/// for J = 0..m-1 (0-based). w_row must have length m+p.
/// Uses an FFT engine when the noise row length is >= 256, a direct sum below;
/// both paths agree to 1e-12 absolute.
std::vector<double> convolve_row(const std::vector<double>& w_row,
                                 const std::vector<double>& h_row,
                                 Eigen::Index m);

/// Rectangular-grid discrete-convolution simulator. The kernel is built
/// internally with du = grid.dx, dw = grid.dt. Output mask is all-true.
FieldData simulate_rg(const ModelParams& params, const LevySeed& seed,
                      const GridSpec& grid, int p, int q, RngStream rng);

/// Diamond-grid simulator. Requires p, q even, n and m odd, and
/// grid.dx == c * grid.dt (relative tolerance 1e-12). The output mask is a
/// checkerboard: (I, J) valid iff I+J is even, 1-based, so (1,1) is valid.
FieldData simulate_dg(const ModelParams& params, const LevySeed& seed,
                      const GridSpec& grid, int p, int q, RngStream rng);

/// Runs simulate_dg at half spacings on a (2n-1) x (2m-1) lattice and keeps
/// every second row and column starting at (1,1), yielding a full-mask field
/// on the requested grid.
FieldData simulate_dg_full(const ModelParams& params, const LevySeed& seed,
                           const GridSpec& grid, int p, int q, RngStream rng);

}  // namespace stou
