#pragma once

#include <Eigen/Core>

#include "stou/errors.hpp"

namespace stou {

/// Rate and shape of the canonical space-time OU field: the kernel is
/// exp(-lambda*w) over the cone |u| <= c*w.
struct ModelParams {
  double lambda;  // decay rate, > 0
  double c;       // cone slope (space per time), > 0

  ModelParams(double lambda_, double c_) : lambda(lambda_), c(c_) {
    if (!(lambda > 0.0)) throw Error("ModelParams: lambda must be > 0");
    if (!(c > 0.0)) throw Error("ModelParams: c must be > 0");
  }
};

/// Regular space-time lattice. Coordinates are x0 + (i-1)*dx for
/// i = 1..n along space and t0 + (j-1)*dt for j = 1..m along time.
struct GridSpec {
  double x0 = 0.0;
  double t0 = 0.0;
  double dx = 1.0;
  double dt = 1.0;
  Eigen::Index n = 1;  // spatial count
  Eigen::Index m = 1;  // temporal count

  double x(Eigen::Index i) const { return x0 + static_cast<double>(i - 1) * dx; }
  double t(Eigen::Index j) const { return t0 + static_cast<double>(j - 1) * dt; }
};

void validate_grid(const GridSpec& grid);

using BoolMatrix = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Lattice values with a validity mask. Rows follow space, columns follow
/// time (ascending left to right). Missing points are carried only by the
/// mask; values at masked-out points are unspecified.
struct FieldData {
  GridSpec grid;
  Eigen::MatrixXd values;  // n x m
  BoolMatrix mask;         // n x m, true = value present

  FieldData() = default;

  FieldData(GridSpec g, Eigen::MatrixXd v, BoolMatrix msk)
      : grid(g), values(std::move(v)), mask(std::move(msk)) {
    validate_grid(grid);
    if (values.rows() != grid.n || values.cols() != grid.m)
      throw Error("FieldData: value matrix does not match grid extents");
    if (mask.rows() != grid.n || mask.cols() != grid.m)
      throw Error("FieldData: mask does not match grid extents");
  }

  /// Full-mask constructor for RG-style outputs.
  FieldData(GridSpec g, Eigen::MatrixXd v)
      : FieldData(g, std::move(v), BoolMatrix::Constant(g.n, g.m, true)) {}

  Eigen::Index valid_count() const { return mask.count(); }
};

}  // namespace stou
