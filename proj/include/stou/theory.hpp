#pragma once

#include "stou/core.hpp"
#include "stou/levy.hpp"

namespace stou {

/// Spatio-temporal autocorrelation of the canonical field:
/// min(exp(-lambda*|d_t|), exp(-lambda*|d_x|/c)).
double acf_st(const ModelParams& params, double d_x, double d_t);

/// Spatial autocorrelation for the two-piece ambit boundary
/// g(w) = c1*w for w <= 1, c1 + c2*(w-1) beyond. Continuous, 1 at d_x = 0.
double acf_spatial_piecewise(double lambda, double c1, double c2, double d_x);

/// Normalised variograms 2*(1 - acf) along each axis.
double variogram_t(const ModelParams& params, double d_t);
double variogram_s(const ModelParams& params, double d_x);

/// kappa_l of the stationary field value: kappa_l(seed) * 2c / (l^2 lambda^2).
double cumulants_of_field(const ModelParams& params, const LevySeed& seed, int l);

/// Parameters (mu~, tau~) of the OU process whose stationary law matches a
/// temporal slice of the Gaussian field: (2*c*mu/lambda, sqrt(c*tau^2/lambda)).
/// Throws NotGaussian for non-Gaussian seeds.
std::pair<double, double> ou_equivalent_params(const ModelParams& params,
                                               const LevySeed& seed);

}  // namespace stou
