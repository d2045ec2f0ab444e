#pragma once

#include <utility>
#include <vector>

#include "stou/core.hpp"
#include "stou/levy.hpp"

namespace stou {

/// Observation sites (x, t) with the field values recorded there.
struct SiteList {
  std::vector<std::pair<double, double>> sites;
  std::vector<double> values;
};

/// Covariance matrix of the field at the given sites:
/// Sigma_ij = c tau^2 / (2 lambda^2) * min(e^{-lambda|t_i-t_j|},
/// e^{-lambda|x_i-x_j|/c}). Throws DuplicateSites on repeated coordinates.
Eigen::MatrixXd build_covariance(
    const ModelParams& params, double tau,
    const std::vector<std::pair<double, double>>& sites);

/// Gaussian conditional prediction at target = (x, t):
///   mu*    = 2 c mu / lambda^2 + r R^{-1} (Y - 2 c mu / lambda^2 * 1)
///   sigma2* = c tau^2 / (2 lambda^2) * (1 - r R^{-1} r^T)
/// solved with a Cholesky factorization of the correlation matrix R; a
/// 1e-10 diagonal nugget is retried once if the factorization fails, after
/// which SingularCorrelation is thrown.
std::pair<double, double> predict_gaussian(const ModelParams& params,
                                           const LevySeed& seed,
                                           const SiteList& obs,
                                           std::pair<double, double> target);

}  // namespace stou
