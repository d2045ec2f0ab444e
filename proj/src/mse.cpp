#include "stou/mse.hpp"

#include <cmath>

namespace stou {

namespace {

void check_canonical_shape(const ModelParams& params) {
  if (std::abs(params.c - 1.0) > 1e-12)
    throw UnsupportedShape("mse formulas are only available for c = 1");
}

long truncation_count(double delta, double R) {
  if (!(delta > 0.0)) throw Error("mse: delta must be > 0");
  if (!(R > 0.0)) throw Error("mse: R must be > 0");
  const double ratio = R / delta;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * rounded)
    throw NonIntegerTruncation("mse: R/delta must be a positive integer");
  return static_cast<long>(rounded);
}

// Kahan-compensated accumulator for the long truncation sums.
struct Kahan {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

MseParts mse_rg_parts(const ModelParams& params, double mu, double tau,
                      double delta, double R) {
  check_canonical_shape(params);
  const long p = truncation_count(delta, R);
  const double lam = params.lambda;
  const double d = delta;

  Kahan mean_sum;   // sum (2j+1) d^2 e^{-lam j d}
  Kahan var_sum;    // sum e^{-2 lam j d} {...}
  const double half_step = 1.0 - std::exp(-lam * d / 2.0);
  const double eld = std::exp(-lam * d);
  for (long j = 0; j <= p; ++j) {
    const double jd = static_cast<double>(j) * d;
    const double e1 = std::exp(-lam * jd);
    const double e2 = e1 * e1;
    const double w = 2.0 * static_cast<double>(j) + 1.0;
    mean_sum.add(w * d * d * e1);
    var_sum.add(e2 * (-4.0 * jd / lam - 4.0 / (lam * lam) * half_step +
                      2.0 * w * d / lam * eld + w * d * d));
  }
  MseParts out;
  const double bias = 2.0 * mu / (lam * lam) - mu * mean_sum.sum;
  out.bias2 = bias * bias;
  out.variance = tau * tau * (1.0 / (2.0 * lam * lam) + var_sum.sum);
  return out;
}

double mse_rg(const ModelParams& params, double mu, double tau, double delta,
              double R) {
  return mse_rg_parts(params, mu, tau, delta, R).total();
}

MseParts mse_dg_parts(const ModelParams& params, double mu, double tau,
                      double delta, double R) {
  check_canonical_shape(params);
  const long p = truncation_count(delta, R);
  const double lam = params.lambda;
  const double d = delta;

  Kahan mean_sum;  // sum 2 (j+1) d^2 e^{-lam j d}
  Kahan var_sum;   // sum 2 (j+1) e^{-2 lam j d} {d^2 - (2/lam^2)(1-e^{-lam d})^2}
  const double step = 1.0 - std::exp(-lam * d);
  const double cell = d * d - 2.0 / (lam * lam) * step * step;
  for (long j = 0; j <= p; ++j) {
    const double e1 = std::exp(-lam * static_cast<double>(j) * d);
    const double w = 2.0 * (static_cast<double>(j) + 1.0);
    mean_sum.add(w * d * d * e1);
    var_sum.add(w * e1 * e1 * cell);
  }
  MseParts out;
  const double bias = 2.0 * mu / (lam * lam) - mu * mean_sum.sum;
  out.bias2 = bias * bias;
  out.variance = tau * tau * (1.0 / (2.0 * lam * lam) + var_sum.sum);
  return out;
}

double mse_dg(const ModelParams& params, double mu, double tau, double delta,
              double R) {
  return mse_dg_parts(params, mu, tau, delta, R).total();
}

MseParts mse_limit_fixed_delta_parts(GridAlgorithm alg, const ModelParams& params,
                                     double mu, double tau, double delta) {
  check_canonical_shape(params);
  if (!(delta > 0.0)) throw Error("mse: delta must be > 0");
  const double lam = params.lambda;
  const double d = delta;
  const double y = std::exp(-lam * d);       // e^{-lam d}
  const double z = y * y;                    // e^{-2 lam d}
  const double sum_z = 1.0 / (1.0 - z);      // sum z^j
  const double sum_jz = z / ((1.0 - z) * (1.0 - z));
  const double sum_2j1z = (1.0 + z) / ((1.0 - z) * (1.0 - z));

  MseParts out;
  if (alg == GridAlgorithm::RG) {
    const double sum_2j1y = (1.0 + y) / ((1.0 - y) * (1.0 - y));
    const double bias = 2.0 * mu / (lam * lam) - mu * d * d * sum_2j1y;
    out.bias2 = bias * bias;
    const double half_step = 1.0 - std::exp(-lam * d / 2.0);
    const double var_sum = -4.0 * d / lam * sum_jz -
                           4.0 / (lam * lam) * half_step * sum_z +
                           2.0 * d / lam * y * sum_2j1z + d * d * sum_2j1z;
    out.variance = tau * tau * (1.0 / (2.0 * lam * lam) + var_sum);
  } else {
    const double sum_j1y = 1.0 / ((1.0 - y) * (1.0 - y));  // sum (j+1) y^j
    const double sum_j1z = 1.0 / ((1.0 - z) * (1.0 - z));
    const double bias = 2.0 * mu / (lam * lam) - 2.0 * mu * d * d * sum_j1y;
    out.bias2 = bias * bias;
    const double step = 1.0 - y;
    const double cell = d * d - 2.0 / (lam * lam) * step * step;
    out.variance =
        tau * tau * (1.0 / (2.0 * lam * lam) + 2.0 * cell * sum_j1z);
  }
  return out;
}

double mse_limit_fixed_delta(GridAlgorithm alg, const ModelParams& params,
                             double mu, double tau, double delta) {
  return mse_limit_fixed_delta_parts(alg, params, mu, tau, delta).total();
}

double mse_leading_fixed_R(GridAlgorithm alg, const ModelParams& params,
                           double mu, double tau, double R) {
  check_canonical_shape(params);
  if (!(R > 0.0)) throw Error("mse: R must be > 0");
  const double lam = params.lambda;
  const double lam2 = lam * lam;
  const double var_coef = tau * tau / (2.0 * lam2) * (1.0 + 2.0 * lam * R);
  double bias_coef;
  if (alg == GridAlgorithm::RG) {
    bias_coef = 4.0 * mu * mu / (lam2 * lam2) * (1.0 + lam * R) * (1.0 + lam * R);
  } else {
    bias_coef = 4.0 * mu * mu / (lam2 * lam2) * (1.0 + R) * (1.0 + R) * lam2;
  }
  return (bias_coef + var_coef) * std::exp(-2.0 * R * lam);
}

}  // namespace stou
