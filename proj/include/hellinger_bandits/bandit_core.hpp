#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hellinger_bandits/ucb_indices.hpp"

namespace hb {

// State of one sequential run: the step about to be played and the per-arm
// statistics. Invariant: the pull counts sum to t - 1.
struct BanditRound {
  std::uint64_t t = 1;
  std::vector<ArmState> states;

  BanditRound() = default;
  // Fresh round over `num_arms` arms; throws InputError when num_arms < 2.
  explicit BanditRound(std::size_t num_arms);

  std::size_t num_arms() const { return states.size(); }

  friend bool operator==(const BanditRound&, const BanditRound&) = default;
};

// Arm to play at step round.t. The first K steps pull arm (t-1) mod K; after
// that the arm with the largest index wins, ties going to the smallest id.
std::size_t select_arm(const PolicyConfig& config, Family family, const BanditRound& round);

// Records `reward` for `arm` and advances the clock.
void update(BanditRound& round, std::size_t arm, double reward);

}  // namespace hb
