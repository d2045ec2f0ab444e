#include "stou/predict.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>

namespace stou {

namespace {

double site_correlation(const ModelParams& params,
                        const std::pair<double, double>& a,
                        const std::pair<double, double>& b) {
  const double et = std::exp(-params.lambda * std::abs(a.second - b.second));
  const double ex =
      std::exp(-params.lambda * std::abs(a.first - b.first) / params.c);
  return std::min(et, ex);
}

void check_distinct(const std::vector<std::pair<double, double>>& sites) {
  for (std::size_t i = 0; i < sites.size(); ++i)
    for (std::size_t j = i + 1; j < sites.size(); ++j)
      if (sites[i] == sites[j])
        throw DuplicateSites("observation sites must be pairwise distinct");
}

Eigen::MatrixXd correlation_matrix(
    const ModelParams& params,
    const std::vector<std::pair<double, double>>& sites) {
  const Eigen::Index n = static_cast<Eigen::Index>(sites.size());
  Eigen::MatrixXd R(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    R(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double rho = site_correlation(params, sites[i], sites[j]);
      R(i, j) = rho;
      R(j, i) = rho;
    }
  }
  return R;
}

}  // namespace

Eigen::MatrixXd build_covariance(
    const ModelParams& params, double tau,
    const std::vector<std::pair<double, double>>& sites) {
  if (!(tau > 0.0)) throw Error("build_covariance: tau must be > 0");
  check_distinct(sites);
  const double scale =
      params.c * tau * tau / (2.0 * params.lambda * params.lambda);
  return scale * correlation_matrix(params, sites);
}

std::pair<double, double> predict_gaussian(const ModelParams& params,
                                           const LevySeed& seed,
                                           const SiteList& obs,
                                           std::pair<double, double> target) {
  if (seed.family() != SeedFamily::Gaussian)
    throw NotGaussian("predict_gaussian requires a Gaussian seed");
  if (obs.sites.empty()) throw Error("predict_gaussian: no observations");
  if (obs.sites.size() != obs.values.size())
    throw LengthMismatch("predict_gaussian: sites/values length mismatch");
  check_distinct(obs.sites);
  const auto& g = seed.as_gaussian();
  const double lam2 = params.lambda * params.lambda;
  const double prior_mean = 2.0 * params.c * g.mu / lam2;
  const double prior_var = params.c * g.tau * g.tau / (2.0 * lam2);

  const Eigen::Index n = static_cast<Eigen::Index>(obs.sites.size());
  Eigen::MatrixXd R = correlation_matrix(params, obs.sites);
  Eigen::VectorXd r(n), centered(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    r(i) = site_correlation(params, target, obs.sites[i]);
    centered(i) = obs.values[static_cast<std::size_t>(i)] - prior_mean;
  }

  Eigen::LLT<Eigen::MatrixXd> llt(R);
  if (llt.info() != Eigen::Success) {
    R.diagonal().array() += 1e-10;
    llt.compute(R);
    if (llt.info() != Eigen::Success)
      throw SingularCorrelation(
          "correlation matrix is not positive definite (nugget retry failed)");
  }
  const Eigen::VectorXd weights = llt.solve(r);
  const double mu_star = prior_mean + weights.dot(centered);
  const double sigma2 = prior_var * (1.0 - weights.dot(r));
  return {mu_star, std::max(sigma2, 0.0)};
}

}  // namespace stou
