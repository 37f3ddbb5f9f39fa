#include "hellinger_bandits/coldstart_ranker.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <string_view>

#include "hellinger_bandits/bandit_core.hpp"
#include "hellinger_bandits/error.hpp"
#include "hellinger_bandits/rng.hpp"
#include "hellinger_bandits/simulator.hpp"

namespace hb {
namespace {

std::uint64_t parse_count(std::string_view field, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw InputError("line " + std::to_string(line) + ": '" + std::string(field) +
                     "' is not a non-negative integer");
  }
  return value;
}

void check_record(const ContentStats& s) {
  if (s.clicks > s.impressions) {
    throw InputError("record '" + s.id + "' has more clicks than impressions");
  }
}

}  // namespace

double coldstart_score(const ContentStats& stats, double t, double c) {
  check_record(stats);
  if (stats.impressions == 0) return std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(stats.impressions);
  const double ctr = static_cast<double>(stats.clicks) / n;
  return hellinger_index_bernoulli(ctr, hellinger_radius(t, n, c));
}

std::vector<std::string> rank_top_k(std::span<const ContentStats> stats, double t, double c,
                                    std::size_t k) {
  if (stats.empty()) throw InputError("no items to rank");
  if (k == 0) throw InputError("k must be at least 1");
  if (!(t >= 1.0)) throw InputError("logical time t must be at least 1");

  std::vector<double> scores(stats.size());
  for (std::size_t i = 0; i < stats.size(); ++i) scores[i] = coldstart_score(stats[i], t, c);

  std::vector<std::uint32_t> order(stats.size());
  std::iota(order.begin(), order.end(), 0u);
  const auto better = [&](std::uint32_t a, std::uint32_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return stats[a].id < stats[b].id;
  };
  const std::size_t take = std::min(k, stats.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                    better);

  std::vector<std::string> ids;
  ids.reserve(take);
  for (std::size_t i = 0; i < take; ++i) ids.push_back(stats[order[i]].id);
  return ids;
}

std::vector<ContentStats> read_stats_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("stats file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "id,impressions,clicks") {
    throw InputError("stats header must be 'id,impressions,clicks', got '" + line + "'");
  }
  std::vector<ContentStats> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto first = line.find(',');
    const auto second = first == std::string::npos ? first : line.find(',', first + 1);
    if (second == std::string::npos || line.find(',', second + 1) != std::string::npos) {
      throw InputError("line " + std::to_string(line_no) + ": expected three fields");
    }
    ContentStats s;
    s.id = line.substr(0, first);
    if (s.id.empty()) throw InputError("line " + std::to_string(line_no) + ": empty id");
    const std::string_view view(line);
    s.impressions = parse_count(view.substr(first + 1, second - first - 1), line_no);
    s.clicks = parse_count(view.substr(second + 1), line_no);
    check_record(s);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<ContentStats> read_stats_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open stats file '" + path + "'");
  return read_stats_csv(in);
}

std::vector<ContentStats> synthetic_stats(std::size_t count, std::uint64_t seed,
                                          std::uint64_t max_impressions, double max_ctr) {
  RandomStream rng(derive_seed({seed, 0x5747a75ULL}));
  std::vector<ContentStats> out;
  out.reserve(count);
  char id[32];
  for (std::size_t i = 0; i < count; ++i) {
    ContentStats s;
    std::snprintf(id, sizeof(id), "item-%06zu", i);
    s.id = id;
    s.impressions = rng.below(max_impressions + 1);
    const double ctr = max_ctr * rng.uniform();
    // Stochastic rounding of the expected click count.
    const double expected = ctr * static_cast<double>(s.impressions);
    s.clicks = static_cast<std::uint64_t>(std::floor(expected + rng.uniform()));
    s.clicks = std::min(s.clicks, s.impressions);
    out.push_back(std::move(s));
  }
  return out;
}

LatencyStats latency_bench(std::size_t num_arms, std::size_t k, std::size_t repetitions,
                           std::uint64_t seed, double c) {
  if (num_arms < k) throw InputError("num_arms must be at least k");
  if (repetitions == 0) throw InputError("repetitions must be at least 1");
  const std::vector<ContentStats> pool = synthetic_stats(num_arms, seed);
  std::uint64_t served = 0;
  for (const ContentStats& s : pool) served += s.impressions;
  const double t = static_cast<double>(served) + 1.0;

  LatencyStats out;
  std::vector<double> samples;
  samples.reserve(repetitions);
  for (std::size_t r = 0; r < repetitions; ++r) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::string> ids = rank_top_k(pool, t, c, k);
    const auto stop = std::chrono::steady_clock::now();
    samples.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
    if (r + 1 == repetitions) out.last_result = std::move(ids);
  }
  out.min_ms = *std::min_element(samples.begin(), samples.end());
  out.median_ms = quantile(samples, 0.5);
  out.p99_ms = quantile(samples, 0.99);
  return out;
}

TrafficResult synthetic_traffic_compare(std::span<const double> ctrs, std::uint64_t horizon,
                                        std::span<const PolicyConfig> policies,
                                        std::uint64_t seed) {
  if (policies.empty()) throw InputError("no policies to compare");
  if (ctrs.size() < 2) throw InputError("traffic comparison needs at least two arms");
  if (horizon < ctrs.size()) throw InputError("horizon must be at least the number of arms");
  for (double ctr : ctrs) check_mean(Family::Bernoulli, ctr);
  for (const PolicyConfig& p : policies) p.validate();

  const std::size_t num_policies = policies.size();
  TrafficResult out;
  out.ctrs.assign(ctrs.begin(), ctrs.end());
  out.cumulative_reward.assign(num_policies, {});
  for (auto& series : out.cumulative_reward) series.reserve(horizon);
  out.impressions.assign(num_policies, 0);

  RandomStream router(derive_seed({seed, 0}));
  std::vector<RandomStream> feedback;
  std::vector<BanditRound> rounds;
  for (std::size_t p = 0; p < num_policies; ++p) {
    feedback.emplace_back(derive_seed({seed, 1, p}));
    rounds.emplace_back(ctrs.size());
  }
  std::vector<double> totals(num_policies, 0.0);

  for (std::uint64_t step = 0; step < horizon; ++step) {
    const std::size_t p = num_policies == 1 ? 0 : static_cast<std::size_t>(router.below(num_policies));
    const std::size_t arm = select_arm(policies[p], Family::Bernoulli, rounds[p]);
    const double click = sample(Family::Bernoulli, ctrs[arm], feedback[p]);
    update(rounds[p], arm, click);
    totals[p] += click;
    ++out.impressions[p];
    for (std::size_t q = 0; q < num_policies; ++q) out.cumulative_reward[q].push_back(totals[q]);
  }
  return out;
}

TrafficResult synthetic_traffic_compare(std::size_t arms, std::uint64_t horizon,
                                        std::span<const PolicyConfig> policies,
                                        std::uint64_t seed) {
  RandomStream rng(derive_seed({seed, 0xc7a5ULL}));
  std::vector<double> ctrs;
  ctrs.reserve(arms);
  const double lo = std::log(0.005);
  const double hi = std::log(0.1);
  for (std::size_t i = 0; i < arms; ++i) ctrs.push_back(std::exp(lo + (hi - lo) * rng.uniform()));
  return synthetic_traffic_compare(ctrs, horizon, policies, seed);
}

}  // namespace hb
