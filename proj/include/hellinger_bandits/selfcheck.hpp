#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hb {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelfCheckReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

struct SelfCheckOptions {
  // Non-zero values perturb the closed-form quadratic (negative control).
  double quadratic_perturbation = 0.0;
  std::uint64_t seed = 20240601;
  std::uint64_t concentration_trials = 100'000;
};

struct ConcentrationEstimate {
  double frequency = 0.0;  // empirical P{mu_hat > mu, KL(mu_hat, mu) > f/n}
  double bound = 0.0;      // e^{-f}
  double allowance = 0.0;  // bound + 3 sqrt(bound / trials)
};

// Monte-Carlo estimate of the Bernoulli deviation probability above.
ConcentrationEstimate concentration_frequency(double mu, std::uint64_t n, double f,
                                              std::uint64_t trials, std::uint64_t seed);

// Grid checks of the closed forms, distance identities and inequalities, plus
// the concentration Monte-Carlo.
SelfCheckReport run_selfcheck(const SelfCheckOptions& options = {});

}  // namespace hb
