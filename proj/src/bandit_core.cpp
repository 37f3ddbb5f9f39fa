#include "hellinger_bandits/bandit_core.hpp"

#include <string>

#include "hellinger_bandits/error.hpp"

namespace hb {

BanditRound::BanditRound(std::size_t num_arms) : states(num_arms) {
  if (num_arms < 2) throw InputError("a bandit needs at least two arms");
}

std::size_t select_arm(const PolicyConfig& config, Family family, const BanditRound& round) {
  const std::size_t k = round.num_arms();
  if (round.t <= k) return static_cast<std::size_t>((round.t - 1) % k);

  std::size_t best = 0;
  double best_index = index(config, family, round.states[0], round.t);
  for (std::size_t arm = 1; arm < k; ++arm) {
    const double value = index(config, family, round.states[arm], round.t);
    if (value > best_index) {
      best_index = value;
      best = arm;
    }
  }
  return best;
}

void update(BanditRound& round, std::size_t arm, double reward) {
  if (arm >= round.num_arms()) {
    throw InputError("arm " + std::to_string(arm) + " out of range for " +
                     std::to_string(round.num_arms()) + " arms");
  }
  ArmState& s = round.states[arm];
  ++s.pulls;
  s.reward_sum += reward;
  ++round.t;
}

}  // namespace hb
