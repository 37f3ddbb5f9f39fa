#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hellinger_bandits/bandit_core.hpp"
#include "hellinger_bandits/reward_models.hpp"
#include "hellinger_bandits/ucb_indices.hpp"

namespace hb {

// Ground-truth environment: a family and one mean per arm.
struct BanditInstance {
  Family family = Family::Bernoulli;
  std::vector<double> means;

  // Throws InputError unless K >= 2 and every mean is in the family domain.
  void validate() const;
  std::size_t num_arms() const { return means.size(); }
  double best_mean() const;
  // mu* - mu_i for every arm.
  std::vector<double> gaps() const;
};

// Reference instances used in the experiments.
BanditInstance bernoulli_reference_instance();
BanditInstance poisson_reference_instance();

// sum_i (mu* - mu_i) N_i.
double pseudo_regret(const BanditInstance& instance, std::span<const std::uint64_t> pull_counts);

struct EpisodeResult {
  // Cumulative pseudo-regret after steps 1..T.
  std::vector<double> regret;
  std::vector<std::uint64_t> pulls;
};

// One seeded run of `config` for `horizon` steps. Arm i draws its n-th reward
// from a stream derived from (seed, i), so every policy run with the same seed
// sees the same reward sequence per arm.
EpisodeResult run_episode(const BanditInstance& instance, const PolicyConfig& config,
                          std::uint64_t horizon, std::uint64_t seed);

// Per-epoch seed: a pure function of the master seed and the epoch ordinal.
std::uint64_t epoch_seed(std::uint64_t master_seed, std::uint64_t epoch);

// Steps at which trajectories are summarized: every step when horizon <= K,
// otherwise up to `count` log-spaced integers in [K + 1, horizon] that always
// include both ends.
std::vector<std::uint64_t> log_checkpoints(std::size_t num_arms, std::uint64_t horizon,
                                           std::size_t count = 200);

// Linear interpolation between order statistics (inclusive convention).
// `values` need not be sorted. Throws InputError on empty input.
double quantile(std::vector<double> values, double prob);

struct PolicySummary {
  PolicyConfig config;
  std::vector<double> mean_regret;
  std::vector<double> q25_regret;
  std::vector<double> q75_regret;
  // Pseudo-regret at the horizon, one entry per epoch.
  std::vector<double> final_regrets;
  // Average N_i(T) across epochs, one entry per arm.
  std::vector<double> mean_pulls;
};

struct ExperimentResult {
  std::vector<std::uint64_t> timesteps;
  std::vector<PolicySummary> policies;
};

struct ExperimentOptions {
  // Worker threads; 0 picks the hardware concurrency. Results do not depend
  // on this value.
  unsigned threads = 1;
  std::size_t checkpoint_count = 200;
};

ExperimentResult run_experiment(const BanditInstance& instance,
                                std::span<const PolicyConfig> configs, std::uint64_t horizon,
                                std::uint64_t epochs, std::uint64_t master_seed,
                                const ExperimentOptions& options = {});

}  // namespace hb
