#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "hellinger_bandits/reward_models.hpp"

namespace hb {

// Sufficient statistics of one arm: pull count and reward sum.
struct ArmState {
  std::uint64_t pulls = 0;
  double reward_sum = 0.0;

  // Empirical mean; only meaningful when pulls > 0.
  double mean() const { return reward_sum / static_cast<double>(pulls); }

  friend bool operator==(const ArmState&, const ArmState&) = default;
};

enum class IndexRule { HellingerUCB, KLUCB, UCB1 };

std::string_view to_string(IndexRule rule);
IndexRule parse_rule(std::string_view name);

struct PolicyConfig {
  IndexRule rule = IndexRule::HellingerUCB;
  // Exploration constant of the Hellinger ball radius, in (1/4, 1/2].
  double c_hellinger = 0.26;
  // Weight of the log log t term in the KL-UCB exploration bound.
  double c_kl_loglog = 0.0;

  // Throws InputError when a constant is outside its interval.
  void validate() const;
  std::string label() const;

  friend bool operator==(const PolicyConfig&, const PolicyConfig&) = default;
};

// Hellinger ball radius 1 - exp(-c log(t) / n).
double hellinger_radius(double t, double n, double c);

// Largest q in [p_hat, 1] with H^2(p_hat, q) <= radius, in closed form.
double hellinger_index_bernoulli(double p_hat, double radius);

// Largest lambda with H^2(lambda_hat, lambda) <= 1 - exp(-exploration), i.e.
// (sqrt(lambda_hat) + sqrt(2 exploration))^2.
double hellinger_index_poisson(double lambda_hat, double exploration);

// sup{mu >= mu_hat : H^2(mu_hat, mu) <= radius} by bisection on the distance.
double hellinger_index_generic(Family family, double mu_hat, double radius);

// sup{mu >= mu_hat : KL(mu_hat, mu) <= bound} by bisection.
double kl_ucb_index(Family family, double mu_hat, double bound);

// mu_hat + sqrt(2 log(t) / n). Not clamped.
double ucb1_index(double mu_hat, double t, double n);

// Dispatches on config.rule. Requires state.pulls >= 1.
double index(const PolicyConfig& config, Family family, const ArmState& state, std::uint64_t t);

namespace detail {

// Closed-form Bernoulli index with the linear coefficient of the quadratic
// scaled by (1 + b_perturbation). Zero perturbation is the production path;
// the self-check uses a non-zero value as a negative control.
double hellinger_index_bernoulli_quadratic(double p_hat, double radius, double b_perturbation);

}  // namespace detail

}  // namespace hb
