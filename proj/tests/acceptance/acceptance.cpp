// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hellinger_bandits/bounds.hpp"
#include "hellinger_bandits/cli.hpp"
#include "hellinger_bandits/coldstart_ranker.hpp"
#include "hellinger_bandits/reward_models.hpp"
#include "hellinger_bandits/rng.hpp"
#include "hellinger_bandits/simulator.hpp"
#include "hellinger_bandits/ucb_indices.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace hb;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void closed_form_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<double> ps = {0.0, 1.0, 1e-12, 1e-9, 1e-6, 1e-3, 0.5, 1.0 - 1e-3, 1.0 - 1e-6,
                            1.0 - 1e-9};
  while (ps.size() < 100) ps.push_back(static_cast<double>(ps.size() - 9) / 91.0);
  std::vector<double> rs = {0.0, 1e-15, 1e-12, 1e-9, 1e-6, 1e-3, 0.5, 0.9, 1.0 - 1e-6,
                            1.0 - 1e-12};
  while (rs.size() < 100) rs.push_back(static_cast<double>(rs.size() - 9) / 91.0);

  double bern = 0.0;
  std::size_t pairs = 0;
  for (double p : ps) {
    for (double r : rs) {
      bern = std::max(bern, std::fabs(hellinger_index_bernoulli(p, r) -
                                      hellinger_index_generic(Family::Bernoulli, p, r)));
      ++pairs;
    }
  }
  // Poisson: means up to 50, exploration x = -log(1 - radius) up to ~28.
  std::vector<double> lams = {0.0, 1e-9, 1e-6, 1e-3};
  while (lams.size() < 100) lams.push_back(50.0 * std::pow(static_cast<double>(lams.size() - 3) / 96.0, 2.0));
  double pois = 0.0;
  for (double lam : lams) {
    for (double r : rs) {
      const double x = -std::log1p(-r);
      pois = std::max(pois, std::fabs(hellinger_index_poisson(lam, x) -
                                      hellinger_index_generic(Family::Poisson, lam, r)));
    }
  }
  const double elapsed = seconds_since(start);
  report(1, bern <= 1e-8 && pois <= 1e-8 && elapsed < 5.0 && pairs == 10000,
         fmt("%zu pairs per family; max gap bernoulli %.3g, poisson %.3g (tol 1e-8); %.2f s (< 5 s)",
             pairs, bern, pois, elapsed));
}

void distance_identity() {
  double worst = 0.0;
  for (int i = 1; i <= 100; ++i) {
    for (int j = 1; j <= 100; ++j) {
      const double a = i / 101.0;
      const double b = j / 101.0;
      worst = std::max(worst, std::fabs(hellinger_sq(Family::Bernoulli, a, b) -
                                        hellinger_sq_cumulant(Family::Bernoulli, a, b)));
    }
  }
  report(2, worst <= 1e-12, fmt("100x100 mean grid, max |closed - cumulant| = %.3g (tol 1e-12)", worst));
}

void inequality_suite() {
  std::mt19937_64 gen(314159);
  std::size_t violations = 0;
  std::size_t checks = 0;
  const double tol = 1e-12;
  for (Family f : {Family::Bernoulli, Family::Poisson}) {
    auto draw = [&] {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      if (f == Family::Bernoulli) {
        const double v = u(gen);
        // A quarter of the draws sit near the boundary.
        if (v < 0.125) return std::pow(10.0, -12.0 * u(gen));
        if (v < 0.25) return 1.0 - std::pow(10.0, -12.0 * u(gen));
        return u(gen);
      }
      return std::pow(10.0, -6.0 + 8.0 * u(gen));
    };
    for (int n = 0; n < 10000; ++n) {
      const double a = draw();
      const double b = draw();
      const double c = draw();
      const double h2 = hellinger_sq(f, a, b);
      for (const double kl : {kl_div(f, a, b), kl_div(f, b, a)}) {
        if (!std::isfinite(kl)) continue;
        checks += 2;
        if (2.0 * h2 > kl + tol * std::max(1.0, kl)) ++violations;
        if (bhattacharyya_distance(f, a, b) > 0.5 * kl + tol * std::max(1.0, kl)) ++violations;
      }
      checks += 2;
      if (std::sqrt(hellinger_sq(f, a, c)) >
          std::sqrt(h2) + std::sqrt(hellinger_sq(f, b, c)) + tol) {
        ++violations;
      }
      if (h2 > tvd(f, a, b) + tol) ++violations;
    }
  }
  report(3, violations == 0,
         fmt("%zu checks over 10^4 sampled triples per family, %zu violations", checks, violations));
}

struct ReferenceRun {
  BanditInstance instance;
  ExperimentResult result;
  double seconds = 0.0;
};

ReferenceRun run_reference(const BanditInstance& instance) {
  const std::vector<PolicyConfig> policies = {PolicyConfig{IndexRule::HellingerUCB},
                                              PolicyConfig{IndexRule::KLUCB},
                                              PolicyConfig{IndexRule::UCB1}};
  const auto start = std::chrono::steady_clock::now();
  ReferenceRun run{instance, run_experiment(instance, policies, 10'000, 200, 1, {.threads = 1}), 0.0};
  run.seconds = seconds_since(start);
  return run;
}

void directional(int id, const ReferenceRun& run) {
  const auto& h = run.result.policies[0];
  const auto& kl = run.result.policies[1];
  const auto& u = run.result.policies[2];
  const double fh = h.mean_regret.back();
  const double fk = kl.mean_regret.back();
  const double fu = u.mean_regret.back();
  std::size_t late = 0;
  std::size_t below = 0;
  for (std::size_t i = 0; i < run.result.timesteps.size(); ++i) {
    if (run.result.timesteps[i] <= 1000) continue;
    ++late;
    if (h.mean_regret[i] < kl.mean_regret[i]) ++below;
  }
  const double share = static_cast<double>(below) / static_cast<double>(late);
  report(id, fh < fk && fh < fu && share >= 0.70 && run.seconds < 600.0,
         fmt("%s: final mean regret hellinger %.2f, kl-ucb %.2f, ucb1 %.2f; hellinger below kl-ucb "
             "at %zu/%zu checkpoints past 10^3 (%.0f%%, need >= 70%%); %.1f s single-threaded",
             to_string(run.instance.family).data(), fh, fk, fu, below, late, 100.0 * share,
             run.seconds));
}

void bound_consistency(const std::vector<ReferenceRun>& runs) {
  bool pass = true;
  std::ostringstream detail;
  for (const ReferenceRun& run : runs) {
    const auto& inst = run.instance;
    const auto& h = run.result.policies[0];
    const double best = inst.best_mean();
    double worst_ratio = 0.0;
    for (std::size_t arm = 0; arm < inst.num_arms(); ++arm) {
      if (inst.means[arm] >= best) continue;
      const double bound = best_epsilon(inst.family, best, inst.means[arm], 0.26, 10'000).bound;
      worst_ratio = std::max(worst_ratio, h.mean_pulls[arm] / bound);
    }
    double worst_curve = 0.0;
    for (std::size_t i = 0; i < run.result.timesteps.size(); ++i) {
      const double ub = regret_upper_bound_best(inst, 0.26, run.result.timesteps[i]);
      worst_curve = std::max(worst_curve, h.mean_regret[i] / ub);
    }
    pass = pass && worst_ratio <= 1.0 && worst_curve <= 1.0;
    detail << to_string(inst.family) << ": max pulls/bound " << fmt("%.3f", worst_ratio)
           << ", max regret/upper bound over checkpoints " << fmt("%.3f", worst_curve) << "; ";
  }
  report(6, pass, detail.str() + "c = 0.26, best epsilon per arm");
}

double bernoulli_kl(double p, double q) {
  auto term = [](double x, double y) { return x == 0.0 ? 0.0 : x * std::log(x / y); };
  return term(p, q) + term(1.0 - p, 1.0 - q);
}

void concentration() {
  const int trials = 100'000;
  std::mt19937_64 gen(20240601);
  bool pass = true;
  double worst_margin = -1.0;
  std::size_t cases = 0;
  for (double mu : {0.1, 0.5}) {
    for (int n : {10, 100}) {
      std::binomial_distribution<int> binom(n, mu);
      for (double f : {1.0, 2.0}) {
        int hits = 0;
        for (int i = 0; i < trials; ++i) {
          const double mean = static_cast<double>(binom(gen)) / n;
          if (mean > mu && bernoulli_kl(mean, mu) > f / n) ++hits;
        }
        const double freq = static_cast<double>(hits) / trials;
        const double allowed = std::exp(-f) + 3.0 * std::sqrt(std::exp(-f) / trials);
        pass = pass && freq <= allowed;
        worst_margin = std::max(worst_margin, freq / allowed);
        ++cases;
      }
    }
  }
  report(7, pass,
         fmt("%zu cases x 10^5 trials; largest frequency/allowance ratio %.3f (must be <= 1)", cases,
             worst_margin));
}

void latency() {
  const std::size_t arms = 10'000;
  const std::size_t k = 50;
  const std::uint64_t seed = 1;
  const LatencyStats stats = latency_bench(arms, k, 1000, seed);

  const std::vector<ContentStats> pool = synthetic_stats(arms, seed);
  double t = 1.0;
  for (const auto& s : pool) t += static_cast<double>(s.impressions);
  const auto expected = oracle::full_sort_top_k(pool, k, [&](const ContentStats& s) {
    return oracle::coldstart_score_bisection(s, t, 0.26);
  });
  const bool same = stats.last_result == expected;
  report(8, stats.median_ms < 10.0 && same,
         fmt("10^4 arms, k = 50, 1000 calls: median %.3f ms, p99 %.3f ms (budget 10 ms); result %s "
             "full-sort oracle",
             stats.median_ms, stats.p99_ms, same ? "equals" : "DIFFERS FROM"));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "hb");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (code != 0) std::cerr << err.str();
  return code;
}

void reproducibility() {
  const fs::path dir = fs::temp_directory_path() / "hb_acceptance_repro";
  fs::remove_all(dir);
  const std::string a = (dir / "first").string();
  const std::string b = (dir / "second").string();
  bool pass = invoke({"simulate", "--preset", "poisson-reference", "--horizon", "3000", "--epochs",
                      "40", "--seed", "11", "--out-dir", a}) == 0;
  pass = pass && invoke({"simulate", "--config", a + "/manifest.json", "--out-dir", b}) == 0;
  std::size_t compared = 0;
  if (pass) {
    for (const auto& e : fs::directory_iterator(a)) {
      if (e.path().extension() != ".csv") continue;
      ++compared;
      pass = pass && slurp(e.path()) == slurp(fs::path(b) / e.path().filename());
    }
  }
  pass = pass && compared == 6;
  fs::remove_all(dir);
  report(9, pass, fmt("simulate rerun from manifest.json: %zu CSV files compared, %s", compared,
                      pass ? "byte-identical" : "MISMATCH"));
}

void traffic() {
  const std::vector<PolicyConfig> policies = {PolicyConfig{IndexRule::HellingerUCB},
                                              PolicyConfig{IndexRule::KLUCB},
                                              PolicyConfig{IndexRule::UCB1}};
  const int seeds = 30;
  int beats_ucb1 = 0;
  int beats_kl = 0;
  for (int s = 1; s <= seeds; ++s) {
    const TrafficResult r = synthetic_traffic_compare(20, 30'000, policies, s);
    const double h = r.cumulative_reward[0].back();
    if (h >= r.cumulative_reward[2].back()) ++beats_ucb1;
    if (h >= r.cumulative_reward[1].back()) ++beats_kl;
  }
  const double share = static_cast<double>(beats_ucb1) / seeds;
  report(10, share >= 0.8,
         fmt("%d seeds, 20 arms, 30000 impressions: hellinger >= ucb1 in %d (%.0f%%, need >= 80%%); "
             ">= kl-ucb in %d (informational)",
             seeds, beats_ucb1, 100.0 * share, beats_kl));
}

}  // namespace

int main() {
  closed_form_equivalence();
  distance_identity();
  inequality_suite();
  std::vector<ReferenceRun> runs;
  runs.push_back(run_reference(bernoulli_reference_instance()));
  directional(4, runs.back());
  runs.push_back(run_reference(poisson_reference_instance()));
  directional(5, runs.back());
  bound_consistency(runs);
  concentration();
  latency();
  reproducibility();
  traffic();
  std::printf("%s: %d of 10 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
