#pragma once

#include "stou/core.hpp"

namespace stou {

enum class GridAlgorithm { RG, DG };

/// Squared bias and variance contributions of the simulation error
/// E[|Y - Z|^2] = bias^2 + variance; both addends are nonnegative.
struct MseParts {
  double bias2 = 0.0;
  double variance = 0.0;
  double total() const { return bias2 + variance; }
};

/// Exact simulation MSE of the rectangular-grid approximation for the
/// canonical process with c = 1 (UnsupportedShape otherwise), Gaussian basis
/// with seed mean mu and seed standard deviation tau, grid size delta and
/// truncation range R. Requires R/delta to be a (positive) integer.
MseParts mse_rg_parts(const ModelParams& params, double mu, double tau,
                      double delta, double R);
double mse_rg(const ModelParams& params, double mu, double tau, double delta,
              double R);

/// Diamond-grid analogue; delta is the temporal spacing (diamond width 2*delta).
MseParts mse_dg_parts(const ModelParams& params, double mu, double tau,
                      double delta, double R);
double mse_dg(const ModelParams& params, double mu, double tau, double delta,
              double R);

/// Limit of the MSE as R -> infinity with delta fixed (geometric-series sums).
MseParts mse_limit_fixed_delta_parts(GridAlgorithm alg, const ModelParams& params,
                                     double mu, double tau, double delta);
double mse_limit_fixed_delta(GridAlgorithm alg, const ModelParams& params,
                             double mu, double tau, double delta);

/// Leading term of the MSE for fixed R as delta -> 0:
/// RG: [4 mu^2/lambda^4 (1+lambda R)^2 + tau^2/(2 lambda^2) (1+2 lambda R)] e^{-2 R lambda}
/// DG: [4 mu^2/lambda^2 (1+R)^2      + tau^2/(2 lambda^2) (1+2 lambda R)] e^{-2 R lambda}
double mse_leading_fixed_R(GridAlgorithm alg, const ModelParams& params,
                           double mu, double tau, double R);

}  // namespace stou
