#include "hellinger_bandits/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "hellinger_bandits/error.hpp"
#include "hellinger_bandits/rng.hpp"

namespace hb {

void BanditInstance::validate() const {
  if (means.size() < 2) throw InputError("an instance needs at least two arms");
  for (double mu : means) check_mean(family, mu);
}

double BanditInstance::best_mean() const {
  if (means.empty()) throw InputError("empty instance");
  return *std::max_element(means.begin(), means.end());
}

std::vector<double> BanditInstance::gaps() const {
  const double best = best_mean();
  std::vector<double> out;
  out.reserve(means.size());
  for (double mu : means) out.push_back(best - mu);
  return out;
}

BanditInstance bernoulli_reference_instance() {
  return {Family::Bernoulli, {0.01, 0.01, 0.01, 0.02, 0.02, 0.02, 0.05, 0.05, 0.05, 0.1}};
}

BanditInstance poisson_reference_instance() {
  return {Family::Poisson, {0.03, 0.03, 0.04, 0.04, 0.05, 0.05, 0.1}};
}

double pseudo_regret(const BanditInstance& instance, std::span<const std::uint64_t> pull_counts) {
  if (pull_counts.size() != instance.num_arms()) {
    throw InputError("pull count vector has " + std::to_string(pull_counts.size()) +
                     " entries for " + std::to_string(instance.num_arms()) + " arms");
  }
  const std::vector<double> gaps = instance.gaps();
  double total = 0.0;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    total += gaps[i] * static_cast<double>(pull_counts[i]);
  }
  return total;
}

EpisodeResult run_episode(const BanditInstance& instance, const PolicyConfig& config,
                          std::uint64_t horizon, std::uint64_t seed) {
  instance.validate();
  config.validate();
  const std::size_t k = instance.num_arms();
  if (horizon < k) {
    throw InputError("horizon " + std::to_string(horizon) + " is shorter than the " +
                     std::to_string(k) + " initialization steps");
  }

  std::vector<RandomStream> streams;
  streams.reserve(k);
  for (std::size_t arm = 0; arm < k; ++arm) streams.emplace_back(derive_seed({seed, arm}));

  const std::vector<double> gaps = instance.gaps();
  BanditRound round(k);
  EpisodeResult result;
  result.regret.reserve(horizon);
  double regret = 0.0;
  for (std::uint64_t step = 0; step < horizon; ++step) {
    const std::size_t arm = select_arm(config, instance.family, round);
    const double reward = sample(instance.family, instance.means[arm], streams[arm]);
    update(round, arm, reward);
    regret += gaps[arm];
    result.regret.push_back(regret);
  }
  result.pulls.reserve(k);
  for (const ArmState& s : round.states) result.pulls.push_back(s.pulls);
  return result;
}

std::uint64_t epoch_seed(std::uint64_t master_seed, std::uint64_t epoch) {
  return derive_seed({master_seed, epoch});
}

std::vector<std::uint64_t> log_checkpoints(std::size_t num_arms, std::uint64_t horizon,
                                           std::size_t count) {
  std::vector<std::uint64_t> out;
  if (horizon <= num_arms) {
    for (std::uint64_t t = 1; t <= horizon; ++t) out.push_back(t);
    return out;
  }
  const double lo = std::log(static_cast<double>(num_arms + 1));
  const double hi = std::log(static_cast<double>(horizon));
  const std::size_t n = std::max<std::size_t>(count, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    auto t = static_cast<std::uint64_t>(std::llround(std::exp(x)));
    t = std::clamp<std::uint64_t>(t, num_arms + 1, horizon);
    if (out.empty() || t > out.back()) out.push_back(t);
  }
  if (out.back() != horizon) out.push_back(horizon);
  return out;
}

double quantile(std::vector<double> values, double prob) {
  if (values.empty()) throw InputError("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = prob * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

namespace {

struct EpochOutcome {
  std::vector<double> regret_at_checkpoints;
  std::vector<std::uint64_t> pulls;
};

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace

ExperimentResult run_experiment(const BanditInstance& instance,
                                std::span<const PolicyConfig> configs, std::uint64_t horizon,
                                std::uint64_t epochs, std::uint64_t master_seed,
                                const ExperimentOptions& options) {
  instance.validate();
  if (epochs == 0) throw InputError("epochs must be at least 1");
  if (configs.empty()) throw InputError("no policies to run");
  for (const PolicyConfig& c : configs) c.validate();
  if (horizon < instance.num_arms()) {
    throw InputError("horizon must be at least the number of arms");
  }

  ExperimentResult result;
  result.timesteps = log_checkpoints(instance.num_arms(), horizon, options.checkpoint_count);

  const std::size_t num_jobs = configs.size() * epochs;
  std::vector<EpochOutcome> outcomes(num_jobs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t job = next++; job < num_jobs; job = next++) {
      try {
        const std::size_t policy = job / epochs;
        const std::uint64_t epoch = job % epochs;
        EpisodeResult ep =
            run_episode(instance, configs[policy], horizon, epoch_seed(master_seed, epoch));
        EpochOutcome& out = outcomes[job];
        out.regret_at_checkpoints.reserve(result.timesteps.size());
        for (std::uint64_t t : result.timesteps) out.regret_at_checkpoints.push_back(ep.regret[t - 1]);
        out.pulls = std::move(ep.pulls);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(options.threads), num_jobs));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  const std::size_t k = instance.num_arms();
  const std::size_t points = result.timesteps.size();
  for (std::size_t p = 0; p < configs.size(); ++p) {
    PolicySummary summary;
    summary.config = configs[p];
    summary.mean_pulls.assign(k, 0.0);
    std::vector<double> column(epochs);
    for (std::size_t j = 0; j < points; ++j) {
      double sum = 0.0;
      for (std::uint64_t e = 0; e < epochs; ++e) {
        column[e] = outcomes[p * epochs + e].regret_at_checkpoints[j];
        sum += column[e];
      }
      summary.mean_regret.push_back(sum / static_cast<double>(epochs));
      summary.q25_regret.push_back(quantile(column, 0.25));
      summary.q75_regret.push_back(quantile(column, 0.75));
    }
    for (std::uint64_t e = 0; e < epochs; ++e) {
      const EpochOutcome& out = outcomes[p * epochs + e];
      summary.final_regrets.push_back(out.regret_at_checkpoints.back());
      for (std::size_t arm = 0; arm < k; ++arm) {
        summary.mean_pulls[arm] += static_cast<double>(out.pulls[arm]);
      }
    }
    for (double& m : summary.mean_pulls) m /= static_cast<double>(epochs);
    result.policies.push_back(std::move(summary));
  }
  return result;
}

}  // namespace hb
