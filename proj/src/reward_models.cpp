#include "hellinger_bandits/reward_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hellinger_bandits/error.hpp"

namespace hb {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTvdTailMass = 1e-12;

// x log(x / y) with 0 log 0 = 0.
double xlogxy(double x, double y) {
  if (x == 0.0) return 0.0;
  if (y == 0.0) return kInf;
  return x * std::log(x / y);
}

double softplus(double theta) {
  if (theta > 0.0) return theta + std::log1p(std::exp(-theta));
  return std::log1p(std::exp(theta));
}

unsigned long long sample_poisson_inversion(double lambda, RandomStream& rng) {
  const double u = rng.uniform();
  double p = std::exp(-lambda);
  double cdf = p;
  unsigned long long k = 0;
  // The cap only triggers when the cdf saturates below u through rounding.
  while (u >= cdf && k < 1000) {
    ++k;
    p *= lambda / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

// Transformed rejection with squeeze (Hoermann 1993), for lambda >= 10.
unsigned long long sample_poisson_ptrs(double lambda, RandomStream& rng) {
  const double slam = std::sqrt(lambda);
  const double loglam = std::log(lambda);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<unsigned long long>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        -lambda + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<unsigned long long>(k);
    }
  }
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::Bernoulli: return "bernoulli";
    case Family::Poisson: return "poisson";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  if (name == "bernoulli" || name == "Bernoulli") return Family::Bernoulli;
  if (name == "poisson" || name == "Poisson") return Family::Poisson;
  throw InputError("unknown reward family '" + std::string(name) + "'");
}

bool in_domain(Family family, double mu) {
  if (!std::isfinite(mu) || mu < 0.0) return false;
  return family == Family::Poisson || mu <= 1.0;
}

void check_mean(Family family, double mu) {
  if (!in_domain(family, mu)) {
    throw InputError("mean " + std::to_string(mu) + " outside the " +
                     std::string(to_string(family)) + " domain");
  }
}

double hellinger_sq(Family family, double mu0, double mu1) {
  check_mean(family, mu0);
  check_mean(family, mu1);
  if (mu0 == mu1) return 0.0;
  double h2 = 0.0;
  if (family == Family::Bernoulli) {
    const double d1 = std::sqrt(mu0) - std::sqrt(mu1);
    const double d0 = std::sqrt(1.0 - mu0) - std::sqrt(1.0 - mu1);
    h2 = 0.5 * (d1 * d1 + d0 * d0);
  } else {
    const double d = std::sqrt(mu0) - std::sqrt(mu1);
    h2 = -std::expm1(-0.5 * d * d);
  }
  return std::clamp(h2, 0.0, 1.0);
}

double bhattacharyya_distance(Family family, double mu0, double mu1) {
  const double h2 = hellinger_sq(family, mu0, mu1);
  if (family == Family::Poisson) {
    const double d = std::sqrt(mu0) - std::sqrt(mu1);
    return 0.5 * d * d;
  }
  if (h2 <= 0.5) return -std::log1p(-h2);
  return -std::log(std::sqrt(mu0 * mu1) + std::sqrt((1.0 - mu0) * (1.0 - mu1)));
}

double cumulant(Family family, double theta) {
  if (family == Family::Bernoulli) return softplus(theta);
  return std::exp(theta);
}

double natural_param(Family family, double mu) {
  check_mean(family, mu);
  if (family == Family::Bernoulli) return std::log(mu) - std::log1p(-mu);
  return std::log(mu);
}

double hellinger_sq_cumulant(Family family, double mu0, double mu1) {
  if (family == Family::Bernoulli && (mu0 <= 0.0 || mu0 >= 1.0 || mu1 <= 0.0 || mu1 >= 1.0)) {
    throw InputError("cumulant form of the Hellinger distance needs interior Bernoulli means");
  }
  const double a = natural_param(family, mu0);
  const double b = natural_param(family, mu1);
  // Poisson zero mean maps to theta = -inf; psi(-inf) = 0 gives the right limit.
  const double mid = (a == b) ? a : 0.5 * (a + b);
  const double exponent =
      cumulant(family, mid) - 0.5 * (cumulant(family, a) + cumulant(family, b));
  return -std::expm1(exponent);
}

double kl_div(Family family, double mu0, double mu1) {
  check_mean(family, mu0);
  check_mean(family, mu1);
  if (mu0 == mu1) return 0.0;
  if (family == Family::Bernoulli) {
    return xlogxy(mu0, mu1) + xlogxy(1.0 - mu0, 1.0 - mu1);
  }
  if (mu0 == 0.0) return mu1;
  if (mu1 == 0.0) return kInf;
  return mu0 * std::log(mu0 / mu1) - mu0 + mu1;
}

double poisson_pmf(double lambda, unsigned long long x) {
  if (lambda == 0.0) return x == 0 ? 1.0 : 0.0;
  const double xd = static_cast<double>(x);
  return std::exp(xd * std::log(lambda) - lambda - std::lgamma(xd + 1.0));
}

double tvd(Family family, double mu0, double mu1) {
  check_mean(family, mu0);
  check_mean(family, mu1);
  if (mu0 == mu1) return 0.0;
  if (family == Family::Bernoulli) return std::fabs(mu0 - mu1);

  const double past_modes = std::max(mu0, mu1);
  double mass0 = 0.0;
  double mass1 = 0.0;
  double l1 = 0.0;
  for (unsigned long long x = 0;; ++x) {
    const double p = poisson_pmf(mu0, x);
    const double q = poisson_pmf(mu1, x);
    mass0 += p;
    mass1 += q;
    l1 += std::fabs(p - q);
    const bool tails_small = (1.0 - mass0) < kTvdTailMass && (1.0 - mass1) < kTvdTailMass;
    if (static_cast<double>(x) > past_modes && (tails_small || (p == 0.0 && q == 0.0))) break;
  }
  return std::clamp(0.5 * l1, 0.0, 1.0);
}

double sample(Family family, double mu, RandomStream& rng) {
  check_mean(family, mu);
  if (family == Family::Bernoulli) return rng.uniform() < mu ? 1.0 : 0.0;
  if (mu == 0.0) return 0.0;
  if (mu < 10.0) return static_cast<double>(sample_poisson_inversion(mu, rng));
  return static_cast<double>(sample_poisson_ptrs(mu, rng));
}

}  // namespace hb
