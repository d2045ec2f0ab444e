#include "stou/levy.hpp"

#include <cmath>
#include <utility>

namespace stou {

std::string to_string(SeedFamily family) {
  switch (family) {
    case SeedFamily::Gaussian: return "gaussian";
    case SeedFamily::IG: return "ig";
    case SeedFamily::NIG: return "nig";
    case SeedFamily::Gamma: return "gamma";
  }
  return "?";
}

SeedFamily seed_family_from_string(const std::string& name) {
  if (name == "gaussian") return SeedFamily::Gaussian;
  if (name == "ig") return SeedFamily::IG;
  if (name == "nig") return SeedFamily::NIG;
  if (name == "gamma") return SeedFamily::Gamma;
  throw Error("unknown basis family: " + name);
}

LevySeed LevySeed::gaussian(double mu, double tau) {
  if (!(tau >= 0.0)) throw Error("Gaussian seed: tau must be >= 0");
  return LevySeed(GaussianSeed{mu, tau});
}

LevySeed LevySeed::ig(double delta, double gamma) {
  if (!(delta > 0.0)) throw Error("IG seed: delta must be > 0");
  if (!(gamma > 0.0)) throw Error("IG seed: gamma must be > 0");
  return LevySeed(IgSeed{delta, gamma});
}

LevySeed LevySeed::nig(double alpha, double beta, double mu, double delta) {
  if (!(alpha > 0.0)) throw Error("NIG seed: alpha must be > 0");
  if (!(std::abs(beta) < alpha)) throw Error("NIG seed: |beta| < alpha required");
  if (!(delta > 0.0)) throw Error("NIG seed: delta must be > 0");
  return LevySeed(NigSeed{alpha, beta, mu, delta});
}

LevySeed LevySeed::gamma(double alpha, double beta) {
  if (!(alpha > 0.0)) throw Error("Gamma seed: alpha must be > 0");
  if (!(beta > 0.0)) throw Error("Gamma seed: beta must be > 0");
  return LevySeed(GammaSeed{alpha, beta});
}

SeedFamily LevySeed::family() const {
  return static_cast<SeedFamily>(v_.index());
}

const GaussianSeed& LevySeed::as_gaussian() const { return std::get<GaussianSeed>(v_); }
const IgSeed& LevySeed::as_ig() const { return std::get<IgSeed>(v_); }
const NigSeed& LevySeed::as_nig() const { return std::get<NigSeed>(v_); }
const GammaSeed& LevySeed::as_gamma() const { return std::get<GammaSeed>(v_); }

std::vector<std::pair<std::string, double>> LevySeed::parameters() const {
  switch (family()) {
    case SeedFamily::Gaussian: {
      const auto& s = as_gaussian();
      return {{"mu", s.mu}, {"tau", s.tau}};
    }
    case SeedFamily::IG: {
      const auto& s = as_ig();
      return {{"delta", s.delta}, {"gamma", s.gamma}};
    }
    case SeedFamily::NIG: {
      const auto& s = as_nig();
      return {{"alpha", s.alpha}, {"beta", s.beta}, {"mu", s.mu}, {"delta", s.delta}};
    }
    case SeedFamily::Gamma: {
      const auto& s = as_gamma();
      return {{"alpha", s.alpha}, {"beta", s.beta}};
    }
  }
  return {};
}

double seed_cumulants(const LevySeed& seed, int l) {
  if (l < 1 || l > 4) throw Error("seed_cumulants: l must be in 1..4");
  switch (seed.family()) {
    case SeedFamily::Gaussian: {
      const auto& s = seed.as_gaussian();
      if (l == 1) return s.mu;
      if (l == 2) return s.tau * s.tau;
      return 0.0;
    }
    case SeedFamily::IG: {
      const auto& s = seed.as_ig();
      // kappa_l = (2l-3)!! * delta / gamma^(2l-1)
      static constexpr double kDoubleFactorial[] = {1.0, 1.0, 3.0, 15.0};
      return kDoubleFactorial[l - 1] * s.delta / std::pow(s.gamma, 2 * l - 1);
    }
    case SeedFamily::NIG: {
      const auto& s = seed.as_nig();
      const double g = std::sqrt(s.alpha * s.alpha - s.beta * s.beta);
      const double a2 = s.alpha * s.alpha;
      switch (l) {
        case 1: return s.mu + s.delta * s.beta / g;
        case 2: return s.delta * a2 / std::pow(g, 3);
        case 3: return 3.0 * s.delta * s.beta * a2 / std::pow(g, 5);
        default:
          return 3.0 * s.delta * (a2 + 4.0 * s.beta * s.beta) * a2 / std::pow(g, 7);
      }
    }
    case SeedFamily::Gamma: {
      const auto& s = seed.as_gamma();
      static constexpr double kFactorial[] = {1.0, 1.0, 2.0, 6.0};
      return kFactorial[l - 1] * s.alpha / std::pow(s.beta, l);
    }
  }
  return 0.0;
}

std::pair<double, double> seed_mean_sd(const LevySeed& seed) {
  return {seed_cumulants(seed, 1), std::sqrt(seed_cumulants(seed, 2))};
}

LevySeed solve_seed_from_cumulants(SeedFamily family, double k1, double k2,
                                   double k3, double k4) {
  if (!(k2 > 0.0)) throw InvalidCumulants("k2 must be > 0");
  switch (family) {
    case SeedFamily::Gaussian:
      return LevySeed::gaussian(k1, std::sqrt(k2));
    case SeedFamily::IG: {
      if (!(k1 > 0.0)) throw InvalidCumulants("IG requires k1 > 0");
      const double gamma = std::sqrt(k1 / k2);
      return LevySeed::ig(k1 * gamma, gamma);
    }
    case SeedFamily::Gamma: {
      if (!(k1 > 0.0)) throw InvalidCumulants("Gamma requires k1 > 0");
      return LevySeed::gamma(k1 * k1 / k2, k1 / k2);
    }
    case SeedFamily::NIG: {
      // From kappa_3/kappa_2 = 3*beta/g^2 and
      // kappa_4/kappa_2 = 3/g^2 + 15*(beta/g^2)^2 with g = sqrt(alpha^2-beta^2).
      if (!(3.0 * k4 * k2 > 5.0 * k3 * k3))
        throw InvalidCumulants("NIG requires 3*k4*k2 > 5*k3^2");
      // k4/(3 k2) = 1/g^2 + 5 (beta/g^2)^2.
      const double b = k3 / (3.0 * k2);  // beta / g^2
      const double inv_g2 = k4 / (3.0 * k2) - 5.0 * b * b;
      if (!(inv_g2 > 0.0)) throw InvalidCumulants("NIG inversion: nonpositive g^2");
      const double g2 = 1.0 / inv_g2;
      const double g = std::sqrt(g2);
      const double beta = b * g2;
      const double alpha = std::sqrt(g2 + beta * beta);
      const double delta = k2 * g2 * g / (alpha * alpha);
      const double mu = k1 - delta * beta / g;
      if (!(delta > 0.0) || !std::isfinite(alpha) || !std::isfinite(mu))
        throw InvalidCumulants("NIG inversion: invalid parameters");
      return LevySeed::nig(alpha, beta, mu, delta);
    }
  }
  throw InvalidCumulants("unknown family");
}

namespace {

// Marsaglia-Tsang; exact for all alpha > 0 via the boost step below 1.
double sample_gamma(double alpha, double beta, Rng& rng) {
  if (alpha < 1.0) {
    const double u = rng.next_uniform();
    return sample_gamma(alpha + 1.0, beta, rng) * std::pow(u, 1.0 / alpha);
  }
  const double d = alpha - 1.0 / 3.0;
  const double cc = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.next_normal();
      v = 1.0 + cc * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.next_uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v / beta;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v / beta;
  }
}

// Michael-Schucany-Haas: quadratic-root transform plus a ratio acceptance.
// Parameterised as IG(delta, gamma): mean delta/gamma, shape delta^2.
double sample_ig(double delta, double gamma, Rng& rng) {
  const double mean = delta / gamma;
  const double shape = delta * delta;
  const double z = rng.next_normal();
  const double v = z * z;
  const double x = mean + mean * mean * v / (2.0 * shape) -
                   mean / (2.0 * shape) *
                       std::sqrt(4.0 * mean * shape * v + mean * mean * v * v);
  const double u = rng.next_uniform();
  if (u <= mean / (mean + x)) return x;
  return mean * mean / x;
}

double sample_nig(const NigSeed& s, Rng& rng) {
  // Normal variance-mean mixture with an inverse-Gaussian mixing variable.
  const double g = std::sqrt(s.alpha * s.alpha - s.beta * s.beta);
  const double v = sample_ig(s.delta, g, rng);
  return s.mu + s.beta * v + std::sqrt(v) * rng.next_normal();
}

}  // namespace

double sample_increment_one(const LevySeed& seed, double area, Rng& rng) {
  switch (seed.family()) {
    case SeedFamily::Gaussian: {
      const auto& s = seed.as_gaussian();
      if (s.tau == 0.0) return s.mu * area;
      return s.mu * area + s.tau * std::sqrt(area) * rng.next_normal();
    }
    case SeedFamily::IG: {
      const auto& s = seed.as_ig();
      return sample_ig(s.delta * area, s.gamma, rng);
    }
    case SeedFamily::NIG: {
      const auto& s = seed.as_nig();
      return sample_nig(NigSeed{s.alpha, s.beta, s.mu * area, s.delta * area}, rng);
    }
    case SeedFamily::Gamma: {
      const auto& s = seed.as_gamma();
      return sample_gamma(s.alpha * area, s.beta, rng);
    }
  }
  return 0.0;
}

std::vector<double> sample_increment(const LevySeed& seed, double area,
                                     RngStream stream, std::size_t count) {
  if (!(area > 0.0)) throw Error("sample_increment: area must be > 0");
  Rng rng(stream);
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(sample_increment_one(seed, area, rng));
  return out;
}

}  // namespace stou
