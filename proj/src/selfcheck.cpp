#include "hellinger_bandits/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "hellinger_bandits/reward_models.hpp"
#include "hellinger_bandits/rng.hpp"
#include "hellinger_bandits/ucb_indices.hpp"

namespace hb {
namespace {

constexpr double kIndexTolerance = 1e-8;
constexpr double kIdentityTolerance = 1e-12;
constexpr double kInequalitySlack = 1e-12;

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, a, b);
  return buf;
}

std::vector<double> unit_grid(std::size_t n) {
  std::vector<double> g;
  for (std::size_t i = 0; i < n; ++i) g.push_back(static_cast<double>(i) / static_cast<double>(n - 1));
  return g;
}

std::vector<double> radius_grid() {
  std::vector<double> g = unit_grid(90);
  g.back() = 1.0 - 1e-9;
  for (int e = -10; e <= -1; ++e) g.push_back(std::pow(10.0, e));
  return g;
}

CheckResult check_bernoulli_closed_form(double perturbation) {
  double worst = 0.0;
  for (double p : unit_grid(100)) {
    for (double r : radius_grid()) {
      const double closed = detail::hellinger_index_bernoulli_quadratic(p, r, perturbation);
      const double generic = hellinger_index_generic(Family::Bernoulli, p, r);
      worst = std::max(worst, std::fabs(closed - generic));
    }
  }
  return {"bernoulli-closed-form-vs-bisection", worst <= kIndexTolerance,
          fmt("max |closed - bisection| = %.3g (tolerance %.0e)", worst, kIndexTolerance)};
}

CheckResult check_poisson_closed_form() {
  double worst = 0.0;
  for (double lambda : {0.0, 0.01, 0.03, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 40.0}) {
    for (double r : radius_grid()) {
      if (r >= 0.999) continue;
      const double closed = hellinger_index_poisson(lambda, -std::log1p(-r));
      const double generic = hellinger_index_generic(Family::Poisson, lambda, r);
      worst = std::max(worst, std::fabs(closed - generic));
    }
  }
  return {"poisson-closed-form-vs-bisection", worst <= kIndexTolerance,
          fmt("max |closed - bisection| = %.3g (tolerance %.0e)", worst, kIndexTolerance)};
}

CheckResult check_cumulant_identity() {
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      const double p = 0.001 + 0.998 * i / 99.0;
      const double q = 0.001 + 0.998 * j / 99.0;
      worst = std::max(worst, std::fabs(hellinger_sq(Family::Bernoulli, p, q) -
                                        hellinger_sq_cumulant(Family::Bernoulli, p, q)));
    }
  }
  return {"bernoulli-hellinger-cumulant-identity", worst <= kIdentityTolerance,
          fmt("max |direct - cumulant| = %.3g (tolerance %.0e)", worst, kIdentityTolerance)};
}

CheckResult check_inequalities(Family family, std::uint64_t seed) {
  RandomStream rng(derive_seed({seed, static_cast<std::uint64_t>(family)}));
  const auto draw = [&] {
    return family == Family::Bernoulli ? rng.uniform() : 20.0 * rng.uniform() * rng.uniform();
  };
  int violations = 0;
  for (int i = 0; i < 10'000; ++i) {
    const double a = draw();
    const double b = draw();
    const double c = draw();
    const double h2 = hellinger_sq(family, a, b);
    const double kl_ba = kl_div(family, b, a);
    const double kl_ab = kl_div(family, a, b);
    if (std::isfinite(kl_ab) && 2.0 * h2 > kl_ab + kInequalitySlack) ++violations;
    if (std::isfinite(kl_ba) &&
        bhattacharyya_distance(family, a, b) > 0.5 * kl_ba + kInequalitySlack) {
      ++violations;
    }
    if (h2 > tvd(family, a, b) + kInequalitySlack) ++violations;
    const double ab = std::sqrt(h2);
    const double bc = std::sqrt(hellinger_sq(family, b, c));
    const double ac = std::sqrt(hellinger_sq(family, a, c));
    if (ac > ab + bc + kInequalitySlack) ++violations;
  }
  return {std::string("inequality-chain-") + std::string(to_string(family)), violations == 0,
          fmt("%.0f violations over 10000 sampled triples", violations)};
}

CheckResult check_concentration(std::uint64_t trials, std::uint64_t seed) {
  bool ok = true;
  std::string detail;
  for (double mu : {0.1, 0.5}) {
    for (std::uint64_t n : {10u, 100u}) {
      for (double f : {1.0, 2.0}) {
        const ConcentrationEstimate est = concentration_frequency(mu, n, f, trials, seed);
        ok = ok && est.frequency <= est.allowance;
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%smu=%g n=%llu f=%g: %.5f <= %.5f (margin %.5f)",
                      detail.empty() ? "" : "; ", mu, static_cast<unsigned long long>(n), f,
                      est.frequency, est.allowance, est.allowance - est.frequency);
        detail += buf;
      }
    }
  }
  return {"concentration-monte-carlo", ok, detail};
}

}  // namespace

bool SelfCheckReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

ConcentrationEstimate concentration_frequency(double mu, std::uint64_t n, double f,
                                              std::uint64_t trials, std::uint64_t seed) {
  RandomStream rng(derive_seed({seed, n, static_cast<std::uint64_t>(mu * 1e6),
                                static_cast<std::uint64_t>(f * 1e6)}));
  const double threshold = f / static_cast<double>(n);
  std::uint64_t hits = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    std::uint64_t successes = 0;
    for (std::uint64_t i = 0; i < n; ++i) successes += rng.uniform() < mu ? 1 : 0;
    const double mu_hat = static_cast<double>(successes) / static_cast<double>(n);
    if (mu_hat > mu && kl_div(Family::Bernoulli, mu_hat, mu) > threshold) ++hits;
  }
  ConcentrationEstimate est;
  est.frequency = static_cast<double>(hits) / static_cast<double>(trials);
  est.bound = std::exp(-f);
  est.allowance = est.bound + 3.0 * std::sqrt(est.bound / static_cast<double>(trials));
  return est;
}

SelfCheckReport run_selfcheck(const SelfCheckOptions& options) {
  SelfCheckReport report;
  report.checks.push_back(check_bernoulli_closed_form(options.quadratic_perturbation));
  report.checks.push_back(check_poisson_closed_form());
  report.checks.push_back(check_cumulant_identity());
  report.checks.push_back(check_inequalities(Family::Bernoulli, options.seed));
  report.checks.push_back(check_inequalities(Family::Poisson, options.seed));
  report.checks.push_back(check_concentration(options.concentration_trials, options.seed));
  return report;
}

}  // namespace hb
