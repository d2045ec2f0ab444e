#pragma once

#include <string>
#include <variant>
#include <vector>

#include "stou/errors.hpp"
#include "stou/rng.hpp"

namespace stou {

enum class SeedFamily { Gaussian, IG, NIG, Gamma };

std::string to_string(SeedFamily family);
SeedFamily seed_family_from_string(const std::string& name);

struct GaussianSeed {
  double mu;
  double tau;
};

struct IgSeed {
  double delta;
  double gamma;
};

struct NigSeed {
  double alpha;
  double beta;
  double mu;
  double delta;
};

struct GammaSeed {
  double alpha;
  double beta;
};

/// Unit-area atom of a homogeneous Levy basis. The basis value over a cell
/// of area A has the family law with area-scaled parameters; all cumulants
/// scale linearly with A.
class LevySeed {
 public:
  static LevySeed gaussian(double mu, double tau);
  static LevySeed ig(double delta, double gamma);
  static LevySeed nig(double alpha, double beta, double mu, double delta);
  static LevySeed gamma(double alpha, double beta);

  SeedFamily family() const;

  const GaussianSeed& as_gaussian() const;
  const IgSeed& as_ig() const;
  const NigSeed& as_nig() const;
  const GammaSeed& as_gamma() const;

  /// Names and values of the distributional parameters, in family order.
  std::vector<std::pair<std::string, double>> parameters() const;

 private:
  using Variant = std::variant<GaussianSeed, IgSeed, NigSeed, GammaSeed>;
  explicit LevySeed(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// kappa_l of the unit-area seed, l in 1..4.
double seed_cumulants(const LevySeed& seed, int l);

/// (kappa_1, sqrt(kappa_2)).
std::pair<double, double> seed_mean_sd(const LevySeed& seed);

/// Closed-form moment inversion. Gaussian uses (k1, k2) only; IG and Gamma
/// use (k1, k2); NIG uses all four and requires 3*k4*k2 > 5*k3^2.
/// Throws InvalidCumulants when the family constraints reject the input.
LevySeed solve_seed_from_cumulants(SeedFamily family, double k1, double k2,
                                   double k3 = 0.0, double k4 = 0.0);

/// iid draws of the basis value over a cell of the given area.
std::vector<double> sample_increment(const LevySeed& seed, double area,
                                     RngStream rng, std::size_t count);

/// Streaming variant sharing one engine across calls.
double sample_increment_one(const LevySeed& seed, double area, Rng& rng);

}  // namespace stou
