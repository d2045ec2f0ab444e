#include "stou/theory.hpp"

#include <cmath>

namespace stou {

double acf_st(const ModelParams& params, double d_x, double d_t) {
  const double et = std::exp(-params.lambda * std::abs(d_t));
  const double ex = std::exp(-params.lambda * std::abs(d_x) / params.c);
  return std::min(et, ex);
}

double acf_spatial_piecewise(double lambda, double c1, double c2, double d_x) {
  if (!(lambda > 0.0) || !(c1 > 0.0) || !(c2 > 0.0))
    throw Error("acf_spatial_piecewise: lambda, c1, c2 must be > 0");
  if (!(d_x >= 0.0)) throw Error("acf_spatial_piecewise: d_x must be >= 0");
  const double denom = c1 + (c2 - c1) * std::exp(-2.0 * lambda);
  if (d_x <= 2.0 * c1) {
    const double num =
        (c1 + (c2 - c1) * std::exp(-2.0 * lambda * (1.0 - d_x / (2.0 * c1)))) *
        std::exp(-lambda * d_x / c1);
    return num / denom;
  }
  // Beyond the gradient change the crossing depth is
  // g^{-1}(d_x/2) = 1 + (d_x - 2*c1)/(2*c2).
  const double depth = 1.0 + (d_x - 2.0 * c1) / (2.0 * c2);
  return c2 * std::exp(-2.0 * lambda * depth) / denom;
}

double variogram_t(const ModelParams& params, double d_t) {
  if (!(d_t >= 0.0)) throw Error("variogram_t: d_t must be >= 0");
  return 2.0 * (1.0 - std::exp(-params.lambda * d_t));
}

double variogram_s(const ModelParams& params, double d_x) {
  if (!(d_x >= 0.0)) throw Error("variogram_s: d_x must be >= 0");
  return 2.0 * (1.0 - std::exp(-params.lambda * d_x / params.c));
}

double cumulants_of_field(const ModelParams& params, const LevySeed& seed, int l) {
  const double kl = seed_cumulants(seed, l);
  const double ll = static_cast<double>(l);
  return kl * 2.0 * params.c / (ll * ll * params.lambda * params.lambda);
}

std::pair<double, double> ou_equivalent_params(const ModelParams& params,
                                               const LevySeed& seed) {
  if (seed.family() != SeedFamily::Gaussian)
    throw NotGaussian("ou_equivalent_params requires a Gaussian seed");
  const auto& s = seed.as_gaussian();
  const double mu_tilde = 2.0 * params.c * s.mu / params.lambda;
  const double tau_tilde = std::sqrt(params.c * s.tau * s.tau / params.lambda);
  return {mu_tilde, tau_tilde};
}

}  // namespace stou
