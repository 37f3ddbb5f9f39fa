#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hellinger_bandits/reward_models.hpp"
#include "hellinger_bandits/simulator.hpp"

namespace hb {

// Constants of the pull-count bound for one sub-optimal arm:
//   C1 = -c / log(1 - H^2(mu*, mu_i) / (1 + eps)),
//   C2 = (sqrt(1 + eps) - 1)^2 / (1 + eps).
struct BoundConstants {
  double c = 0.0;
  double epsilon = 0.0;
  double hellinger_sq = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

BoundConstants bound_constants(Family family, double mu_star, double mu_i, double c,
                               double epsilon);

// Which form of the transient term to use.
//   Standard:  C1 / T^C2.
//   Alternate: (C2 H^2)^{-1} / T^{2 C1 C2 H^2}.
enum class TransientForm { Standard, Alternate };

// sum_{t=1}^{T} t^{-exponent}. Exact summation up to 10^6 terms; beyond that
// the tail is bracketed by integrals and the midpoint reported.
struct PSeries {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};
PSeries p_series(double exponent, std::uint64_t horizon);

// The four terms of the expected pull-count bound and their sum.
struct PullBound {
  BoundConstants constants;
  double leading = 0.0;    // -c log T / log(1 - H^2/(1+eps))
  double transient = 0.0;  // see TransientForm
  double p_series = 0.0;   // sum_{t<=T} t^{-2c}
  double tail = 0.0;       // e^{-2H^2} / (1 - e^{-2H^2})
  double total = 0.0;
};

// Upper bound on E[N_i(T)] for Hellinger-UCB. Requires mu_i < mu_star, both in
// the family domain, T >= 1, eps > 0 and c in (1/4, 1/2].
PullBound expected_pulls_bound_terms(Family family, double mu_star, double mu_i, double c,
                                     double epsilon, std::uint64_t horizon,
                                     TransientForm form = TransientForm::Standard);

double expected_pulls_bound(Family family, double mu_star, double mu_i, double c, double epsilon,
                            std::uint64_t horizon);

struct EpsilonChoice {
  double epsilon = 0.0;
  double bound = 0.0;
};

// The log-spaced grid of `points` values in [1e-3, 10].
std::vector<double> epsilon_grid(std::size_t points = 100);

// Minimizes the pull bound over epsilon_grid(points).
EpsilonChoice best_epsilon(Family family, double mu_star, double mu_i, double c,
                           std::uint64_t horizon, std::size_t points = 100);

// sum over sub-optimal arms of gap * pull bound, one shared epsilon.
double regret_upper_bound(const BanditInstance& instance, double c, double epsilon,
                          std::uint64_t horizon);

// Same sum with each arm's bound evaluated at its own best epsilon.
double regret_upper_bound_best(const BanditInstance& instance, double c, std::uint64_t horizon);

struct LowerBound {
  double value = 0.0;
  // Arms left out because KL(mu_i, mu*) is infinite.
  std::vector<std::size_t> skipped_arms;
};

// Asymptotic curve sum_i gap_i log T / KL(mu_i, mu*). Requires T >= 2.
// Accepts single-arm instances (value 0).
LowerBound regret_lower_bound(const BanditInstance& instance, double horizon);

}  // namespace hb
