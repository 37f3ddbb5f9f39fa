#include "hellinger_bandits/bounds.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hellinger_bandits/error.hpp"

namespace hb {
namespace {

constexpr std::uint64_t kExactSeriesTerms = 1'000'000;

void check_bound_inputs(Family family, double mu_star, double mu_i, double c, double epsilon) {
  check_mean(family, mu_star);
  check_mean(family, mu_i);
  if (!(mu_i < mu_star)) {
    throw InputError("pull bound needs a sub-optimal arm (mu_i < mu_star)");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InputError("epsilon must be positive");
  if (!(c > 0.25 && c <= 0.5)) throw InputError("c must lie in (1/4, 1/2]");
}

// Integral of x^{-s} over [a, b].
double power_integral(double s, double a, double b) {
  if (s == 1.0) return std::log(b / a);
  return (std::pow(b, 1.0 - s) - std::pow(a, 1.0 - s)) / (1.0 - s);
}

PullBound pull_bound_with_series(Family family, double mu_star, double mu_i, double c,
                                 double epsilon, std::uint64_t horizon, double series,
                                 TransientForm form) {
  PullBound out;
  out.constants = bound_constants(family, mu_star, mu_i, c, epsilon);
  const BoundConstants& k = out.constants;
  const double log_t = std::log(static_cast<double>(horizon));
  const double t = static_cast<double>(horizon);
  out.leading = k.c1 * log_t;
  if (form == TransientForm::Standard) {
    out.transient = k.c1 / std::pow(t, k.c2);
  } else {
    out.transient = 1.0 / (k.c2 * k.hellinger_sq) / std::pow(t, 2.0 * k.c1 * k.c2 * k.hellinger_sq);
  }
  out.p_series = series;
  out.tail = 1.0 / std::expm1(2.0 * k.hellinger_sq);
  out.total = out.leading + out.transient + out.p_series + out.tail;
  return out;
}

}  // namespace

BoundConstants bound_constants(Family family, double mu_star, double mu_i, double c,
                               double epsilon) {
  check_bound_inputs(family, mu_star, mu_i, c, epsilon);
  BoundConstants k;
  k.c = c;
  k.epsilon = epsilon;
  k.hellinger_sq = hellinger_sq(family, mu_star, mu_i);
  k.c1 = -c / std::log1p(-k.hellinger_sq / (1.0 + epsilon));
  const double root = std::sqrt(1.0 + epsilon) - 1.0;
  k.c2 = root * root / (1.0 + epsilon);
  return k;
}

PSeries p_series(double exponent, std::uint64_t horizon) {
  PSeries out;
  const std::uint64_t exact = std::min(horizon, kExactSeriesTerms);
  double sum = 0.0;
  // Smallest terms first.
  for (std::uint64_t t = exact; t >= 1; --t) sum += std::pow(static_cast<double>(t), -exponent);
  if (horizon <= kExactSeriesTerms) {
    out.value = out.lower = out.upper = sum;
    return out;
  }
  const double n = static_cast<double>(kExactSeriesTerms);
  const double t = static_cast<double>(horizon);
  out.lower = sum + power_integral(exponent, n + 1.0, t + 1.0);
  out.upper = sum + power_integral(exponent, n, t);
  out.value = 0.5 * (out.lower + out.upper);
  return out;
}

PullBound expected_pulls_bound_terms(Family family, double mu_star, double mu_i, double c,
                                     double epsilon, std::uint64_t horizon, TransientForm form) {
  if (horizon < 1) throw InputError("horizon must be at least 1");
  check_bound_inputs(family, mu_star, mu_i, c, epsilon);
  return pull_bound_with_series(family, mu_star, mu_i, c, epsilon, horizon,
                                p_series(2.0 * c, horizon).value, form);
}

double expected_pulls_bound(Family family, double mu_star, double mu_i, double c, double epsilon,
                            std::uint64_t horizon) {
  return expected_pulls_bound_terms(family, mu_star, mu_i, c, epsilon, horizon).total;
}

std::vector<double> epsilon_grid(std::size_t points) {
  if (points < 2) throw InputError("epsilon grid needs at least two points");
  std::vector<double> grid;
  grid.reserve(points);
  const double lo = std::log(1e-3);
  const double hi = std::log(10.0);
  for (std::size_t i = 0; i < points; ++i) {
    grid.push_back(std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1)));
  }
  return grid;
}

EpsilonChoice best_epsilon(Family family, double mu_star, double mu_i, double c,
                           std::uint64_t horizon, std::size_t points) {
  if (horizon < 1) throw InputError("horizon must be at least 1");
  const double series = p_series(2.0 * c, horizon).value;
  EpsilonChoice best{0.0, std::numeric_limits<double>::infinity()};
  for (double eps : epsilon_grid(points)) {
    const double b = pull_bound_with_series(family, mu_star, mu_i, c, eps, horizon, series,
                                            TransientForm::Standard)
                         .total;
    if (b < best.bound) best = {eps, b};
  }
  return best;
}

double regret_upper_bound(const BanditInstance& instance, double c, double epsilon,
                          std::uint64_t horizon) {
  instance.validate();
  const double best = instance.best_mean();
  double total = 0.0;
  for (double mu : instance.means) {
    if (mu >= best) continue;
    total += (best - mu) * expected_pulls_bound(instance.family, best, mu, c, epsilon, horizon);
  }
  return total;
}

double regret_upper_bound_best(const BanditInstance& instance, double c, std::uint64_t horizon) {
  instance.validate();
  const double best = instance.best_mean();
  double total = 0.0;
  for (double mu : instance.means) {
    if (mu >= best) continue;
    total += (best - mu) * best_epsilon(instance.family, best, mu, c, horizon).bound;
  }
  return total;
}

LowerBound regret_lower_bound(const BanditInstance& instance, double horizon) {
  if (!(horizon >= 2.0)) throw InputError("lower bound needs T >= 2");
  for (double mu : instance.means) check_mean(instance.family, mu);
  LowerBound out;
  if (instance.means.empty()) return out;
  const double best = instance.best_mean();
  const double log_t = std::log(horizon);
  for (std::size_t arm = 0; arm < instance.means.size(); ++arm) {
    const double mu = instance.means[arm];
    if (mu >= best) continue;
    const double kl = kl_div(instance.family, mu, best);
    if (!std::isfinite(kl)) {
      out.skipped_arms.push_back(arm);
      continue;
    }
    out.value += (best - mu) * log_t / kl;
  }
  return out;
}

}  // namespace hb
