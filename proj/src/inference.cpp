#include "stou/inference.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace stou {

namespace {

std::vector<double> valid_values(const FieldData& field) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(field.valid_count()));
  for (Eigen::Index j = 0; j < field.grid.m; ++j)
    for (Eigen::Index i = 0; i < field.grid.n; ++i)
      if (field.mask(i, j)) out.push_back(field.values(i, j));
  return out;
}

std::array<double, 5> power_sums(const std::vector<double>& v) {
  std::array<double, 5> s{};
  for (double x : v) {
    const double x2 = x * x;
    s[1] += x;
    s[2] += x2;
    s[3] += x2 * x;
    s[4] += x2 * x2;
  }
  return s;
}

double k_stat_from_sums(const std::array<double, 5>& s, double D, int l) {
  switch (l) {
    case 1:
      return s[1] / D;
    case 2:
      return (D * s[2] - s[1] * s[1]) / (D * (D - 1.0));
    case 3:
      return (D * D * s[3] - 3.0 * D * s[2] * s[1] + 2.0 * s[1] * s[1] * s[1]) /
             (D * (D - 1.0) * (D - 2.0));
    default: {
      const double s1_2 = s[1] * s[1];
      const double num = (D * D * D + D * D) * s[4] -
                         4.0 * (D * D + D) * s[3] * s[1] -
                         3.0 * (D * D - D) * s[2] * s[2] +
                         12.0 * D * s[2] * s1_2 - 6.0 * s1_2 * s1_2;
      return num / (D * (D - 1.0) * (D - 2.0) * (D - 3.0));
    }
  }
}

long count_pairs(const FieldData& field, Axis axis, int lag) {
  long count = 0;
  const Eigen::Index n = field.grid.n;
  const Eigen::Index m = field.grid.m;
  if (axis == Axis::Space) {
    for (Eigen::Index j = 0; j < m; ++j)
      for (Eigen::Index i = 0; i + lag < n; ++i)
        if (field.mask(i, j) && field.mask(i + lag, j)) ++count;
  } else {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j + lag < m; ++j)
        if (field.mask(i, j) && field.mask(i, j + lag)) ++count;
  }
  return count;
}

}  // namespace

double k_statistic(const FieldData& field, int l) {
  if (l < 1 || l > 4) throw Error("k_statistic: l must be in 1..4");
  const auto v = valid_values(field);
  if (static_cast<int>(v.size()) < l)
    throw TooFewPoints("k_statistic: need at least l valid points");
  return k_stat_from_sums(power_sums(v), static_cast<double>(v.size()), l);
}

std::array<double, 4> k_statistics(const FieldData& field) {
  const auto v = valid_values(field);
  if (v.size() < 4)
    throw TooFewPoints("k_statistics: need at least 4 valid points");
  const auto s = power_sums(v);
  const double D = static_cast<double>(v.size());
  return {k_stat_from_sums(s, D, 1), k_stat_from_sums(s, D, 2),
          k_stat_from_sums(s, D, 3), k_stat_from_sums(s, D, 4)};
}

std::vector<double> empirical_variogram(const FieldData& field, Axis axis,
                                        const std::vector<int>& lags) {
  const auto v = valid_values(field);
  if (v.size() < 2)
    throw TooFewPoints("empirical_variogram: need at least 2 valid points");
  const double kappa2 =
      k_stat_from_sums(power_sums(v), static_cast<double>(v.size()), 2);

  std::vector<double> out;
  out.reserve(lags.size());
  const Eigen::Index n = field.grid.n;
  const Eigen::Index m = field.grid.m;
  for (int lag : lags) {
    if (lag < 1) throw Error("empirical_variogram: lags must be positive");
    double sum = 0.0;
    long count = 0;
    if (axis == Axis::Space) {
      for (Eigen::Index j = 0; j < m; ++j)
        for (Eigen::Index i = 0; i + lag < n; ++i)
          if (field.mask(i, j) && field.mask(i + lag, j)) {
            const double d = field.values(i, j) - field.values(i + lag, j);
            sum += d * d;
            ++count;
          }
    } else {
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j + lag < m; ++j)
          if (field.mask(i, j) && field.mask(i, j + lag)) {
            const double d = field.values(i, j) - field.values(i, j + lag);
            sum += d * d;
            ++count;
          }
    }
    if (count == 0)
      throw NoPairs("empirical_variogram: no valid pairs at lag " +
                    std::to_string(lag));
    out.push_back(sum / (static_cast<double>(count) * kappa2));
  }
  return out;
}

namespace {

double invert_variogram_rate(double gamma_hat, double physical_lag) {
  if (!(gamma_hat > 0.0) || !(gamma_hat < 2.0))
    throw DegenerateVariogram(
        "normalised variogram must lie in (0, 2) for inversion");
  return -std::log(1.0 - gamma_hat / 2.0) / physical_lag;
}

int lag_to_steps(double physical_lag, double spacing, const char* what) {
  const double ratio = physical_lag / spacing;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * rounded)
    throw Error(std::string(what) +
                " lag must be a positive integer multiple of the grid spacing");
  return static_cast<int>(rounded);
}

// Bracketed Brent scalar minimization on [lo, hi] with parameter tolerance
// tol. A coarse log-spaced scan locates an interior bracket first.
double minimize_scalar(const std::function<double(double)>& f, double lo,
                       double hi, double tol) {
  constexpr int kScan = 240;
  const double llo = std::log(lo), lhi = std::log(hi);
  double best_f = std::numeric_limits<double>::infinity();
  std::vector<double> xs(kScan + 1), fs(kScan + 1);
  for (int i = 0; i <= kScan; ++i) {
    xs[i] = std::exp(llo + (lhi - llo) * i / kScan);
    fs[i] = f(xs[i]);
    best_f = std::min(best_f, fs[i]);
  }
  int ib = -1;
  for (int i = 1; i < kScan; ++i)
    if (fs[i] <= fs[i - 1] && fs[i] <= fs[i + 1] && fs[i] <= best_f) ib = i;
  if (ib <= 0)
    throw OptimizerNoBracket(
        "objective has no interior minimum in the search interval");
  double a = xs[ib - 1], b = xs[ib + 1];
  double x = xs[ib], w = x, v = x;
  double fx = fs[ib], fw = fx, fv = fx;
  double d = 0.0, e = 0.0;
  const double golden = 0.3819660112501051;
  for (int iter = 0; iter < 200; ++iter) {
    const double xm = 0.5 * (a + b);
    const double tol1 = tol * std::abs(x) + 1e-15;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) break;
    bool parabolic = false;
    if (std::abs(e) > tol1) {
      const double r = (x - w) * (fx - fv);
      double qq = (x - v) * (fx - fw);
      double pp = (x - v) * qq - (x - w) * r;
      qq = 2.0 * (qq - r);
      if (qq > 0.0) pp = -pp;
      qq = std::abs(qq);
      const double etemp = e;
      e = d;
      if (std::abs(pp) < std::abs(0.5 * qq * etemp) && pp > qq * (a - x) &&
          pp < qq * (b - x)) {
        parabolic = true;
        d = pp / qq;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = (xm >= x) ? tol1 : -tol1;
      }
    }
    if (!parabolic) {
      e = (x >= xm) ? a - x : b - x;
      d = golden * e;
    }
    const double u = (std::abs(d) >= tol1) ? x + d : x + ((d > 0) ? tol1 : -tol1);
    const double fu = f(u);
    if (fu <= fx) {
      if (u >= x)
        a = x;
      else
        b = x;
      v = w;
      fv = fw;
      w = x;
      fw = fx;
      x = u;
      fx = fu;
    } else {
      if (u < x)
        a = u;
      else
        b = u;
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  return x;
}

/// Recovers the seed from field k-statistics given (lambda_hat, c_hat):
/// kappa_l(L') = kappa_l(Y) * l^2 lambda^2 / (2 c).
void recover_seed(EstimationResult& r, const FieldData& field,
                  SeedFamily family) {
  r.field_cumulants = k_statistics(field);
  for (int l = 1; l <= 4; ++l) {
    const double ll = static_cast<double>(l);
    r.seed_cumulants[l - 1] = r.field_cumulants[l - 1] * ll * ll *
                              r.lambda_hat * r.lambda_hat / (2.0 * r.c_hat);
  }
  try {
    r.seed_hat = solve_seed_from_cumulants(family, r.seed_cumulants[0],
                                           r.seed_cumulants[1],
                                           r.seed_cumulants[2],
                                           r.seed_cumulants[3]);
  } catch (const InvalidCumulants& e) {
    r.invalid_reason = e.what();
  }
}

std::vector<int> nonempty_lags(const FieldData& field, Axis axis, int n_lags) {
  std::vector<int> lags;
  const Eigen::Index extent =
      (axis == Axis::Space) ? field.grid.n : field.grid.m;
  for (int lag = 1; lag < extent && static_cast<int>(lags.size()) < n_lags;
       ++lag)
    if (count_pairs(field, axis, lag) > 0) lags.push_back(lag);
  if (static_cast<int>(lags.size()) < n_lags)
    throw NoPairs("ls_fit: fewer than n_lags nonempty lags available");
  return lags;
}

}  // namespace

double fit_variogram_rate(const std::vector<double>& lags,
                          const std::vector<double>& gammas) {
  if (lags.size() != gammas.size() || lags.empty())
    throw LengthMismatch("fit_variogram_rate: lags/gammas size mismatch");
  auto sq_loss = [&](double rate) {
    double acc = 0.0;
    for (std::size_t k = 0; k < lags.size(); ++k) {
      const double resid = gammas[k] - 2.0 * (1.0 - std::exp(-rate * lags[k]));
      acc += resid * resid;
    }
    return acc;
  };
  return minimize_scalar(sq_loss, 1e-6, 1e3, 1e-10);
}

EstimationResult mm_fit(const FieldData& field, double dt_lag, double dx_lag,
                        SeedFamily family) {
  const int steps_t = lag_to_steps(dt_lag, field.grid.dt, "temporal");
  const int steps_x = lag_to_steps(dx_lag, field.grid.dx, "spatial");

  EstimationResult r;
  r.method = FitMethod::MM;
  r.lags_used = 1;
  const double gt = empirical_variogram(field, Axis::Time, {steps_t})[0];
  r.lambda_hat = invert_variogram_rate(gt, dt_lag);
  const double gs = empirical_variogram(field, Axis::Space, {steps_x})[0];
  // c_hat = -lambda_hat * d_x / log(1 - gamma_S/2)
  r.c_hat = r.lambda_hat / invert_variogram_rate(gs, dx_lag);
  recover_seed(r, field, family);
  return r;
}

EstimationResult ls_fit(const FieldData& field, int n_lags, SeedFamily family) {
  if (n_lags < 1) throw Error("ls_fit: n_lags must be >= 1");

  const auto lags_t = nonempty_lags(field, Axis::Time, n_lags);
  const auto lags_x = nonempty_lags(field, Axis::Space, n_lags);

  if (n_lags == 1) {
    EstimationResult r = mm_fit(field, lags_t[0] * field.grid.dt,
                                lags_x[0] * field.grid.dx, family);
    r.method = FitMethod::LS;
    return r;
  }

  EstimationResult r;
  r.method = FitMethod::LS;
  r.lags_used = n_lags;

  const auto gt = empirical_variogram(field, Axis::Time, lags_t);
  const auto gs = empirical_variogram(field, Axis::Space, lags_x);

  std::vector<double> dts, dxs;
  for (int lag : lags_t) dts.push_back(lag * field.grid.dt);
  for (int lag : lags_x) dxs.push_back(lag * field.grid.dx);

  r.lambda_hat = fit_variogram_rate(dts, gt);
  // The spatial curve depends on lambda/c only; fit that ratio.
  r.c_hat = r.lambda_hat / fit_variogram_rate(dxs, gs);
  recover_seed(r, field, family);
  return r;
}

}  // namespace stou
