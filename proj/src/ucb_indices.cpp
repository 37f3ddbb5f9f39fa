#include "hellinger_bandits/ucb_indices.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "hellinger_bandits/error.hpp"

namespace hb {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxBisectionSteps = 200;
constexpr double kPoissonBracketCap = 1e300;

std::string shortest(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

// Bisection for sup{x in [lo, hi] : feasible(x)} given feasible(lo) and
// !feasible(hi). Runs until the bracket is two adjacent doubles (well below
// the 1e-12 absolute tolerance) or the step budget is spent; returns the
// feasible end.
template <typename Feasible>
double bisect_sup(double lo, double hi, Feasible feasible) {
  for (int i = 0; i < kMaxBisectionSteps; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

// Doubles an upper bracket for a Poisson mean until the constraint fails.
// Returns +inf if no violation is found below the cap.
template <typename Feasible>
double poisson_upper_bracket(double mu_hat, Feasible feasible) {
  double hi = std::max(mu_hat, 1.0);
  while (feasible(hi)) {
    if (hi > kPoissonBracketCap) return kInf;
    hi *= 2.0;
  }
  return hi;
}

}  // namespace

std::string_view to_string(IndexRule rule) {
  switch (rule) {
    case IndexRule::HellingerUCB: return "hellinger-ucb";
    case IndexRule::KLUCB: return "kl-ucb";
    case IndexRule::UCB1: return "ucb1";
  }
  return "unknown";
}

IndexRule parse_rule(std::string_view name) {
  if (name == "hellinger-ucb" || name == "hellinger") return IndexRule::HellingerUCB;
  if (name == "kl-ucb" || name == "klucb" || name == "kl") return IndexRule::KLUCB;
  if (name == "ucb1") return IndexRule::UCB1;
  throw InputError("unknown index rule '" + std::string(name) + "'");
}

void PolicyConfig::validate() const {
  if (!(c_hellinger > 0.25 && c_hellinger <= 0.5)) {
    throw InputError("c_hellinger must lie in (1/4, 1/2], got " + shortest(c_hellinger));
  }
  if (!(c_kl_loglog >= 0.0) || !std::isfinite(c_kl_loglog)) {
    throw InputError("c_kl_loglog must be finite and non-negative, got " + shortest(c_kl_loglog));
  }
}

std::string PolicyConfig::label() const {
  std::string name(to_string(rule));
  const PolicyConfig defaults;
  if (rule == IndexRule::HellingerUCB && c_hellinger != defaults.c_hellinger) {
    name += "[c=" + shortest(c_hellinger) + "]";
  } else if (rule == IndexRule::KLUCB && c_kl_loglog != defaults.c_kl_loglog) {
    name += "[c=" + shortest(c_kl_loglog) + "]";
  }
  return name;
}

double hellinger_radius(double t, double n, double c) {
  return -std::expm1(-c * std::log(t) / n);
}

namespace detail {

double hellinger_index_bernoulli_quadratic(double p, double radius, double b_perturbation) {
  if (radius <= 0.0) return p;
  if (p >= 1.0) return 1.0;
  if (hellinger_sq(Family::Bernoulli, p, 1.0) <= radius) return 1.0;

  // With m1 = sqrt((1-p)/p) and m2 = (1-R)/sqrt(p) the ball boundary solves
  //   (m1^2+1)^2 q^2 + 2(m1^2 m2^2 - m1^4 - m1^2 - m2^2) q + (m2^2 - m1^2)^2 = 0.
  // Dividing by (m1^2+1)^2 = 1/p^2 and writing w = 1 - (1-R)^2 gives
  //   q^2 - 2(p + w(1-2p)) q + (p - w)^2 = 0,
  // whose discriminant factors as 16 p (1-p) w (1-w).
  const double w = radius * (2.0 - radius);
  const double b = -2.0 * (p + w * (1.0 - 2.0 * p)) * (1.0 + b_perturbation);
  const double c = (p - w) * (p - w);
  double disc = 16.0 * p * (1.0 - p) * w * (1.0 - w);
  if (b_perturbation != 0.0) disc = b * b - 4.0 * c;
  const double root_disc = std::sqrt(std::max(disc, 0.0));

  double q = 0.0;
  if (b < 0.0) {
    q = 0.5 * (-b + root_disc);
  } else if (-b - root_disc != 0.0) {
    q = 2.0 * c / (-b - root_disc);
  }
  return std::clamp(q, p, 1.0);
}

}  // namespace detail

double hellinger_index_bernoulli(double p_hat, double radius) {
  return detail::hellinger_index_bernoulli_quadratic(p_hat, radius, 0.0);
}

double hellinger_index_poisson(double lambda_hat, double exploration) {
  if (exploration <= 0.0) return lambda_hat;
  const double r = std::sqrt(lambda_hat) + std::sqrt(2.0 * exploration);
  return r * r;
}

double hellinger_index_generic(Family family, double mu_hat, double radius) {
  check_mean(family, mu_hat);
  if (radius <= 0.0) return mu_hat;
  // Large radii are compared as -log(1 - H^2), where H^2 itself has lost digits.
  const bool wide = radius > 0.5;
  const double log_radius = -std::log1p(-radius);
  const auto feasible = [&](double mu) {
    return wide ? bhattacharyya_distance(family, mu_hat, mu) <= log_radius
                : hellinger_sq(family, mu_hat, mu) <= radius;
  };
  double hi = 0.0;
  if (family == Family::Bernoulli) {
    if (feasible(1.0)) return 1.0;
    hi = 1.0;
  } else {
    hi = poisson_upper_bracket(mu_hat, feasible);
    if (std::isinf(hi)) return hi;
  }
  return bisect_sup(mu_hat, hi, feasible);
}

double kl_ucb_index(Family family, double mu_hat, double bound) {
  check_mean(family, mu_hat);
  if (bound <= 0.0) return mu_hat;
  double hi = 0.0;
  if (family == Family::Bernoulli) {
    if (mu_hat >= 1.0) return 1.0;
    // KL(0, q) = -log(1 - q).
    if (mu_hat == 0.0) return -std::expm1(-bound);
    hi = 1.0;
  } else {
    // KL(0, lambda) = lambda.
    if (mu_hat == 0.0) return bound;
  }
  const auto feasible = [&](double mu) { return kl_div(family, mu_hat, mu) <= bound; };
  if (family == Family::Poisson) {
    hi = poisson_upper_bracket(mu_hat, feasible);
    if (std::isinf(hi)) return hi;
  }
  return bisect_sup(mu_hat, hi, feasible);
}

double ucb1_index(double mu_hat, double t, double n) {
  return mu_hat + std::sqrt(2.0 * std::log(t) / n);
}

double index(const PolicyConfig& config, Family family, const ArmState& state, std::uint64_t t) {
  if (state.pulls == 0) {
    throw InputError("index requested for an arm that has never been pulled");
  }
  const double n = static_cast<double>(state.pulls);
  const double td = static_cast<double>(t);
  const double mu_hat = state.mean();
  switch (config.rule) {
    case IndexRule::HellingerUCB: {
      const double exploration = config.c_hellinger * std::log(td) / n;
      if (family == Family::Bernoulli) {
        return hellinger_index_bernoulli(mu_hat, -std::expm1(-exploration));
      }
      return hellinger_index_poisson(mu_hat, exploration);
    }
    case IndexRule::KLUCB: {
      const double log_t = std::log(td);
      const double loglog = log_t > 0.0 ? std::max(0.0, std::log(log_t)) : 0.0;
      return kl_ucb_index(family, mu_hat, (log_t + config.c_kl_loglog * loglog) / n);
    }
    case IndexRule::UCB1:
      return ucb1_index(mu_hat, td, n);
  }
  return mu_hat;
}

}  // namespace hb
