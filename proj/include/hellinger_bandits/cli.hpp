#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hellinger_bandits/simulator.hpp"
#include "hellinger_bandits/ucb_indices.hpp"

namespace hb::cli {

inline constexpr std::string_view kVersion = "0.1.0";

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kCheckFailed = 2;

struct SimulateConfig {
  BanditInstance instance;
  std::vector<PolicyConfig> policies;
  std::uint64_t horizon = 10'000;
  std::uint64_t epochs = 200;
  std::uint64_t master_seed = 1;
  bool bounds = true;

  void validate() const;
};

// "bernoulli-reference" or "poisson-reference": the reference instance with all three
// policies at default constants.
SimulateConfig preset(std::string_view name);

// Accepts either a bare configuration object or a manifest.json written by a
// previous run (its "config" member is used).
SimulateConfig parse_simulate_config(std::string_view json_text);
std::string simulate_config_json(const SimulateConfig& config);

// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

// Runs the experiment and writes regret_mean.csv, regret_q25.csv,
// regret_q75.csv, final_regret.csv, pulls.csv, bounds.csv (when enabled) and
// manifest.json into out_dir. Returns the written file names. Nothing is left
// in out_dir if any step fails.
std::vector<std::string> write_simulation(const SimulateConfig& config, const std::string& out_dir,
                                          unsigned threads);

// Worker count from HB_THREADS (unset or 0 means hardware concurrency).
unsigned threads_from_env();

// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hb::cli
