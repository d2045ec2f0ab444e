#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "stou/core.hpp"
#include "stou/levy.hpp"

namespace stou {

enum class Axis { Space, Time };
enum class FitMethod { MM, LS };

/// Output of mm_fit / ls_fit. lambda_hat and c_hat are always set on normal
/// return; the seed estimate may be absent when the recovered cumulants
/// violate the family constraints (the reason is recorded instead, so that
/// replicate sweeps can count invalid estimates rather than abort).
struct EstimationResult {
  FitMethod method = FitMethod::MM;
  double lambda_hat = 0.0;
  double c_hat = 0.0;
  std::array<double, 4> field_cumulants{};  // khat_1..khat_4 of the field
  std::array<double, 4> seed_cumulants{};   // recovered khat_l(L')
  std::optional<LevySeed> seed_hat;
  std::string invalid_reason;  // empty iff seed_hat is set
  int lags_used = 0;

  bool seed_valid() const { return seed_hat.has_value(); }
};

/// Empirical normalised variogram along one axis at the given lags (in grid
/// steps). Each value averages (Y_i - Y_j)^2 over all valid pairs at exactly
/// that separation (zero separation on the other axis), divided by the global
/// k-statistic variance of the field. Throws NoPairs naming the first empty lag.
std::vector<double> empirical_variogram(const FieldData& field, Axis axis,
                                        const std::vector<int>& lags);

/// Unbiased k-statistic estimate of the l-th cumulant over the masked-valid
/// values; requires at least l valid points (TooFewPoints otherwise).
double k_statistic(const FieldData& field, int l);

/// All four k-statistics; requires at least 4 valid points.
std::array<double, 4> k_statistics(const FieldData& field);

/// Least-squares fit of the curve 2(1 - e^{-rate * d}) to (lags[k], gammas[k])
/// by bracketed scalar minimization of the squared residual over
/// rate in [1e-6, 1e3] (parameter tolerance 1e-10). Fitting the temporal
/// variogram gives lambda; fitting the spatial one gives lambda/c.
/// Throws OptimizerNoBracket when no interior minimum exists.
double fit_variogram_rate(const std::vector<double>& lags,
                          const std::vector<double>& gammas);

/// Moments-matching fit: single-lag variogram inversion for lambda and c
/// (lags given in physical units; they must map to integer grid steps), then
/// cumulant matching for the seed parameters of the requested family.
EstimationResult mm_fit(const FieldData& field, double dt_lag, double dx_lag,
                        SeedFamily family);

/// Least-squares fit over the first n_lags nonempty lags on each axis.
/// With n_lags = 1 the result coincides exactly with mm_fit at that lag.
EstimationResult ls_fit(const FieldData& field, int n_lags, SeedFamily family);

}  // namespace stou
