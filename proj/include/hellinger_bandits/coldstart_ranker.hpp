#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hellinger_bandits/ucb_indices.hpp"

namespace hb {

// Engagement counts of one content item, modeled as Bernoulli trials.
struct ContentStats {
  std::string id;
  std::uint64_t impressions = 0;
  std::uint64_t clicks = 0;
};

// Closed-form Hellinger-UCB score of one item at logical time t. Items with no
// impressions score +inf.
double coldstart_score(const ContentStats& stats, double t, double c);

/// Returns the ids of the min(k, |stats|) highest-scoring items, best first.
///
/// Scores use the closed-form Bernoulli index at radius 1 - exp(-c log t / n).
/// Equal scores are ordered by id (lexicographic). Selection uses a partial
/// sort, so the cost is O(n log k) on top of the O(n) scoring pass.
///
/// Throws InputError when a record has more clicks than impressions, when
/// stats is empty, when t < 1 or when k is zero.
std::vector<std::string> rank_top_k(std::span<const ContentStats> stats, double t, double c,
                                    std::size_t k);

// CSV snapshot with header `id,impressions,clicks`.
std::vector<ContentStats> read_stats_csv(std::istream& in);
std::vector<ContentStats> read_stats_csv_file(const std::string& path);

// Synthetic item pool: impressions uniform in [0, max_impressions], CTR
// uniform in [0, max_ctr], clicks = impressions * CTR stochastically rounded.
std::vector<ContentStats> synthetic_stats(std::size_t count, std::uint64_t seed,
                                          std::uint64_t max_impressions = 5000,
                                          double max_ctr = 0.2);

struct LatencyStats {
  double min_ms = 0.0;
  double median_ms = 0.0;
  double p99_ms = 0.0;
  std::vector<std::string> last_result;
};

// Times rank_top_k over `repetitions` calls on a synthetic pool of `num_arms`
// items. Data generation is outside the timed region.
LatencyStats latency_bench(std::size_t num_arms, std::size_t k, std::size_t repetitions,
                           std::uint64_t seed, double c = 0.26);

struct TrafficResult {
  std::vector<double> ctrs;
  // cumulative_reward[p][s] is policy p's total reward after global step s+1.
  std::vector<std::vector<double>> cumulative_reward;
  std::vector<std::uint64_t> impressions;
};

/// Shared-traffic comparison of index policies on hidden Bernoulli CTRs.
///
/// At every step one policy is drawn uniformly to serve the impression; it
/// picks an arm from its own statistics (round-robin first, then index
/// argmax over its own clock), the click is drawn from the arm's CTR, and
/// only that policy's statistics and reward are updated.
TrafficResult synthetic_traffic_compare(std::span<const double> ctrs, std::uint64_t horizon,
                                        std::span<const PolicyConfig> policies,
                                        std::uint64_t seed);

// Same with `arms` CTRs drawn log-uniformly from [0.005, 0.1] using `seed`.
TrafficResult synthetic_traffic_compare(std::size_t arms, std::uint64_t horizon,
                                        std::span<const PolicyConfig> policies,
                                        std::uint64_t seed);

}  // namespace hb
