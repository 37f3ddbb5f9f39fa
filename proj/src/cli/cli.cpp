#include "hellinger_bandits/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "hellinger_bandits/bounds.hpp"
#include "hellinger_bandits/coldstart_ranker.hpp"
#include "hellinger_bandits/error.hpp"
#include "hellinger_bandits/selfcheck.hpp"

namespace hb::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<PolicyConfig> default_policies() {
  return {PolicyConfig{IndexRule::HellingerUCB}, PolicyConfig{IndexRule::KLUCB},
          PolicyConfig{IndexRule::UCB1}};
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(sep, start), text.size());
    std::string item(text.substr(start, end - start));
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
    start = end + 1;
  }
  return out;
}

std::vector<double> parse_means(std::string_view text) {
  std::vector<double> out;
  for (const std::string& item : split(text, ',')) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      throw InputError("'" + item + "' is not a number");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<PolicyConfig> parse_policies(std::string_view text) {
  std::vector<PolicyConfig> out;
  for (const std::string& name : split(text, ',')) out.push_back(PolicyConfig{parse_rule(name)});
  if (out.empty()) throw InputError("empty policy list");
  return out;
}

json policy_json(const PolicyConfig& p) {
  return {{"rule", std::string(to_string(p.rule))},
          {"c_hellinger", p.c_hellinger},
          {"c_kl_loglog", p.c_kl_loglog}};
}

PolicyConfig policy_from_json(const json& j) {
  if (j.is_string()) return PolicyConfig{parse_rule(j.get<std::string>())};
  PolicyConfig p{parse_rule(j.at("rule").get<std::string>())};
  p.c_hellinger = j.value("c_hellinger", p.c_hellinger);
  p.c_kl_loglog = j.value("c_kl_loglog", p.c_kl_loglog);
  return p;
}

// Buffered CSV file, committed into place only when every file is ready.
class OutputSet {
 public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}
  OutputSet(const OutputSet&) = delete;
  OutputSet& operator=(const OutputSet&) = delete;
  ~OutputSet() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& [name, _] : files_) fs::remove(dir_ / (name + ".tmp"), ec);
  }

  std::ostringstream& open(const std::string& name) {
    files_.emplace_back(name, std::ostringstream{});
    return files_.back().second;
  }

  std::vector<std::string> commit() {
    fs::create_directories(dir_);
    for (auto& [name, body] : files_) {
      std::ofstream out(dir_ / (name + ".tmp"), std::ios::binary | std::ios::trunc);
      out << body.str();
      if (!out.flush()) throw std::runtime_error("failed writing " + (dir_ / name).string());
    }
    std::vector<std::string> names;
    for (auto& [name, _] : files_) {
      fs::rename(dir_ / (name + ".tmp"), dir_ / name);
      names.push_back(name);
    }
    committed_ = true;
    return names;
  }

 private:
  fs::path dir_;
  std::vector<std::pair<std::string, std::ostringstream>> files_;
  bool committed_ = false;
};

std::vector<std::string> policy_labels(const std::vector<PolicyConfig>& policies) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < policies.size(); ++i) {
    std::string label = policies[i].label();
    for (std::size_t j = 0; j < i; ++j) {
      if (labels[j] == label) {
        label += "#" + std::to_string(i);
        break;
      }
    }
    labels.push_back(label);
  }
  return labels;
}

void write_band(std::ostream& out, const ExperimentResult& result,
                const std::vector<std::string>& labels,
                std::vector<double> PolicySummary::*member) {
  out << "t";
  for (const std::string& l : labels) out << ',' << l;
  out << '\n';
  for (std::size_t j = 0; j < result.timesteps.size(); ++j) {
    out << result.timesteps[j];
    for (const PolicySummary& p : result.policies) out << ',' << format_double((p.*member)[j]);
    out << '\n';
  }
}

double hellinger_constant(const SimulateConfig& config) {
  for (const PolicyConfig& p : config.policies) {
    if (p.rule == IndexRule::HellingerUCB) return p.c_hellinger;
  }
  return PolicyConfig{}.c_hellinger;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Options shared between the simulate and bound subcommands.
struct InstanceFlags {
  std::string config_path;
  std::string preset;
  std::string family;
  std::string means;
  std::string policies;
  std::uint64_t horizon = 0;
  std::uint64_t epochs = 0;
  std::uint64_t seed = 0;
  double c_hellinger = std::nan("");
  double c_kl_loglog = std::nan("");
};

bool given(const CLI::App& app, const std::string& name) {
  const CLI::Option* opt = app.get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

SimulateConfig resolve_config(const InstanceFlags& f, const CLI::App& app) {
  if (!f.config_path.empty() && !f.preset.empty()) {
    throw InputError("--config and --preset are mutually exclusive");
  }
  SimulateConfig config;
  bool have_base = false;
  if (!f.config_path.empty()) {
    config = parse_simulate_config(read_file(f.config_path));
    have_base = true;
  } else if (!f.preset.empty()) {
    config = preset(f.preset);
    have_base = true;
  }
  if (!f.family.empty()) config.instance.family = parse_family(f.family);
  if (!f.means.empty()) {
    config.instance.means = parse_means(f.means);
    have_base = true;
  }
  if (!have_base) throw InputError("need one of --preset, --config or --means");
  if (!f.policies.empty()) config.policies = parse_policies(f.policies);
  if (config.policies.empty()) config.policies = default_policies();
  if (given(app, "--horizon")) config.horizon = f.horizon;
  if (given(app, "--epochs")) config.epochs = f.epochs;
  if (given(app, "--seed")) config.master_seed = f.seed;
  for (PolicyConfig& p : config.policies) {
    if (!std::isnan(f.c_hellinger)) p.c_hellinger = f.c_hellinger;
    if (!std::isnan(f.c_kl_loglog)) p.c_kl_loglog = f.c_kl_loglog;
  }
  config.validate();
  return config;
}

void add_instance_flags(CLI::App& cmd, InstanceFlags& f) {
  cmd.add_option("--config", f.config_path, "JSON configuration or a previous manifest.json");
  cmd.add_option("--preset", f.preset, "bernoulli-reference | poisson-reference");
  cmd.add_option("--family", f.family, "bernoulli | poisson");
  cmd.add_option("--means", f.means, "comma-separated arm means");
  cmd.add_option("--policies", f.policies, "comma-separated: hellinger-ucb,kl-ucb,ucb1");
  cmd.add_option("--horizon", f.horizon, "time horizon T");
  cmd.add_option("--c-hellinger", f.c_hellinger, "Hellinger-UCB exploration constant in (1/4, 1/2]");
  cmd.add_option("--c-kl-loglog", f.c_kl_loglog, "KL-UCB log log t weight");
}

int cmd_simulate(const InstanceFlags& flags, const CLI::App& app, const std::string& out_dir,
                 bool no_bounds, std::ostream& out) {
  SimulateConfig config = resolve_config(flags, app);
  if (no_bounds) config.bounds = false;
  const auto files = write_simulation(config, out_dir, threads_from_env());
  out << "wrote";
  for (const std::string& f : files) out << ' ' << f;
  out << " to " << out_dir << '\n';
  return kOk;
}

void print_pull_bound(std::ostream& out, const PullBound& b, double mu_i) {
  out << std::setw(10) << format_double(mu_i) << std::setw(14) << b.constants.hellinger_sq
      << std::setw(12) << b.constants.epsilon << std::setw(14) << b.constants.c1 << std::setw(14)
      << b.constants.c2 << std::setw(14) << b.leading << std::setw(14) << b.transient
      << std::setw(12) << b.p_series << std::setw(12) << b.tail << std::setw(14) << b.total << '\n';
}

int cmd_bound(InstanceFlags flags, const CLI::App& app, double mu_star, double mu_i,
              double epsilon, const std::string& csv_path, std::ostream& out) {
  const bool single = given(app, "--mu-star") || given(app, "--mu-i");
  BanditInstance instance;
  double c = PolicyConfig{}.c_hellinger;
  std::uint64_t horizon = given(app, "--horizon") ? flags.horizon : 10'000;
  if (single) {
    if (!given(app, "--mu-star") || !given(app, "--mu-i")) {
      throw InputError("--mu-star and --mu-i must be given together");
    }
    instance.family = flags.family.empty() ? Family::Bernoulli : parse_family(flags.family);
    instance.means = {mu_i, mu_star};
    if (!(mu_i < mu_star)) throw InputError("--mu-i must be smaller than --mu-star");
  } else {
    const SimulateConfig config = resolve_config(flags, app);
    instance = config.instance;
    horizon = config.horizon;
  }
  if (!std::isnan(flags.c_hellinger)) c = flags.c_hellinger;
  PolicyConfig{IndexRule::HellingerUCB, c, 0.0}.validate();
  instance.validate();
  if (horizon < 1) throw InputError("--horizon must be at least 1");

  const bool fixed_eps = given(app, "--epsilon");
  const double best = instance.best_mean();
  std::ostringstream csv;
  csv << "arm,mu_i,hellinger_sq,epsilon,c1,c2,leading,transient,p_series,tail,pull_bound\n";
  out << "family=" << to_string(instance.family) << " mu*=" << format_double(best)
      << " c=" << format_double(c) << " T=" << horizon << '\n';
  out << std::setw(10) << "mu_i" << std::setw(14) << "H^2" << std::setw(12) << "eps"
      << std::setw(14) << "C1" << std::setw(14) << "C2" << std::setw(14) << "leading"
      << std::setw(14) << "transient" << std::setw(12) << "p-series" << std::setw(12) << "tail"
      << std::setw(14) << "E[N_i] bound" << '\n';
  out << std::setprecision(8);
  double upper = 0.0;
  for (std::size_t arm = 0; arm < instance.num_arms(); ++arm) {
    const double mu = instance.means[arm];
    if (mu >= best) continue;
    const double eps = fixed_eps ? epsilon : best_epsilon(instance.family, best, mu, c, horizon).epsilon;
    const PullBound b = expected_pulls_bound_terms(instance.family, best, mu, c, eps, horizon);
    print_pull_bound(out, b, mu);
    upper += (best - mu) * b.total;
    csv << arm << ',' << format_double(mu) << ',' << format_double(b.constants.hellinger_sq) << ','
        << format_double(eps) << ',' << format_double(b.constants.c1) << ','
        << format_double(b.constants.c2) << ',' << format_double(b.leading) << ','
        << format_double(b.transient) << ',' << format_double(b.p_series) << ','
        << format_double(b.tail) << ',' << format_double(b.total) << '\n';
  }
  out << "regret upper bound: " << format_double(upper) << '\n';
  if (horizon >= 2) {
    const LowerBound lower = regret_lower_bound(instance, static_cast<double>(horizon));
    out << "regret lower bound (asymptotic): " << format_double(lower.value) << '\n';
    for (std::size_t arm : lower.skipped_arms) {
      out << "  arm " << arm << " skipped: KL(mu_i, mu*) is infinite\n";
    }
  }
  if (!csv_path.empty()) {
    std::ofstream f(csv_path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + csv_path + "'");
    f << csv.str();
  }
  return kOk;
}

int cmd_rank_bench(std::size_t num_arms, std::size_t k, std::size_t reps, std::uint64_t seed,
                   double budget_ms, const std::string& out_dir, std::ostream& out) {
  const LatencyStats stats = latency_bench(num_arms, k, reps, seed);
  const bool pass = stats.median_ms < budget_ms;
  out << "rank_top_k: " << num_arms << " arms, k=" << k << ", " << reps << " calls\n"
      << "  min    " << format_double(stats.min_ms) << " ms\n"
      << "  median " << format_double(stats.median_ms) << " ms\n"
      << "  p99    " << format_double(stats.p99_ms) << " ms\n"
      << "  budget " << format_double(budget_ms) << " ms (median): " << (pass ? "PASS" : "FAIL")
      << '\n';
  if (!out_dir.empty()) {
    OutputSet files(out_dir);
    files.open("latency.csv") << "num_arms,k,repetitions,min_ms,median_ms,p99_ms,budget_ms,pass\n"
                              << num_arms << ',' << k << ',' << reps << ','
                              << format_double(stats.min_ms) << ','
                              << format_double(stats.median_ms) << ','
                              << format_double(stats.p99_ms) << ',' << format_double(budget_ms)
                              << ',' << (pass ? 1 : 0) << '\n';
    files.commit();
  }
  return pass ? kOk : kCheckFailed;
}

int cmd_rank(const std::string& stats_path, double t, std::size_t k, double c, std::ostream& out) {
  const std::vector<ContentStats> stats = read_stats_csv_file(stats_path);
  if (std::isnan(t)) {
    std::uint64_t served = 0;
    for (const ContentStats& s : stats) served += s.impressions;
    t = static_cast<double>(served) + 1.0;
  }
  PolicyConfig{IndexRule::HellingerUCB, c, 0.0}.validate();
  const std::vector<std::string> ids = rank_top_k(stats, t, c, k);
  out << "rank,id\n";
  for (std::size_t i = 0; i < ids.size(); ++i) out << i + 1 << ',' << ids[i] << '\n';
  return kOk;
}

int cmd_traffic(std::size_t arms, std::uint64_t horizon, const std::string& policies,
                std::uint64_t seed, const std::string& out_dir, std::ostream& out) {
  const std::vector<PolicyConfig> configs =
      policies.empty() ? default_policies() : parse_policies(policies);
  const TrafficResult result = synthetic_traffic_compare(arms, horizon, configs, seed);
  const std::vector<std::string> labels = policy_labels(configs);

  OutputSet files(out_dir);
  std::ostringstream& csv = files.open("cumulative_reward.csv");
  csv << "step";
  for (const std::string& l : labels) csv << ',' << l;
  csv << '\n';
  for (std::uint64_t s = 0; s < horizon; ++s) {
    csv << s + 1;
    for (const auto& series : result.cumulative_reward) csv << ',' << format_double(series[s]);
    csv << '\n';
  }
  std::ostringstream& ctr = files.open("ctrs.csv");
  ctr << "arm,ctr\n";
  for (std::size_t a = 0; a < result.ctrs.size(); ++a) ctr << a << ',' << format_double(result.ctrs[a]) << '\n';
  json manifest;
  manifest["command"] = "traffic";
  manifest["version"] = std::string(kVersion);
  manifest["master_seed"] = seed;
  json cfg;
  cfg["arms"] = arms;
  cfg["horizon"] = horizon;
  cfg["policies"] = json::array();
  for (const PolicyConfig& p : configs) cfg["policies"].push_back(policy_json(p));
  manifest["config"] = cfg;
  manifest["outputs"] = {"cumulative_reward.csv", "ctrs.csv"};
  files.open("manifest.json") << manifest.dump(2) << '\n';
  files.commit();

  for (std::size_t p = 0; p < configs.size(); ++p) {
    out << labels[p] << ": reward " << format_double(result.cumulative_reward[p].back())
        << " over " << result.impressions[p] << " impressions\n";
  }
  return kOk;
}

int cmd_selfcheck(double perturbation, std::ostream& out) {
  SelfCheckOptions options;
  options.quadratic_perturbation = perturbation;
  const SelfCheckReport report = run_selfcheck(options);
  for (const CheckResult& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  }
  out << (report.all_passed() ? "selfcheck passed\n" : "selfcheck FAILED\n");
  return report.all_passed() ? kOk : kCheckFailed;
}

}  // namespace

void SimulateConfig::validate() const {
  instance.validate();
  if (policies.empty()) throw InputError("no policies configured");
  for (const PolicyConfig& p : policies) p.validate();
  if (epochs < 1) throw InputError("epochs must be at least 1");
  if (horizon < instance.num_arms()) {
    throw InputError("horizon " + std::to_string(horizon) + " is shorter than the number of arms");
  }
}

SimulateConfig preset(std::string_view name) {
  SimulateConfig config;
  if (name == "bernoulli-reference") {
    config.instance = bernoulli_reference_instance();
  } else if (name == "poisson-reference") {
    config.instance = poisson_reference_instance();
  } else {
    throw InputError("unknown preset '" + std::string(name) + "'");
  }
  config.policies = default_policies();
  return config;
}

SimulateConfig parse_simulate_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON configuration: ") + e.what());
  }
  if (j.contains("config") && j.contains("command")) j = j.at("config");
  try {
    SimulateConfig config;
    if (j.contains("preset")) config = preset(j.at("preset").get<std::string>());
    if (j.contains("family")) config.instance.family = parse_family(j.at("family").get<std::string>());
    if (j.contains("means")) config.instance.means = j.at("means").get<std::vector<double>>();
    if (j.contains("policies")) {
      config.policies.clear();
      for (const json& p : j.at("policies")) config.policies.push_back(policy_from_json(p));
    }
    if (config.policies.empty()) config.policies = default_policies();
    config.horizon = j.value("horizon", config.horizon);
    config.epochs = j.value("epochs", config.epochs);
    config.master_seed = j.value("master_seed", j.value("seed", config.master_seed));
    config.bounds = j.value("bounds", config.bounds);
    return config;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed configuration: ") + e.what());
  }
}

std::string simulate_config_json(const SimulateConfig& config) {
  json j;
  j["family"] = std::string(to_string(config.instance.family));
  j["means"] = config.instance.means;
  j["policies"] = json::array();
  for (const PolicyConfig& p : config.policies) j["policies"].push_back(policy_json(p));
  j["horizon"] = config.horizon;
  j["epochs"] = config.epochs;
  j["master_seed"] = config.master_seed;
  j["bounds"] = config.bounds;
  return j.dump();
}

std::string format_double(double value) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

unsigned threads_from_env() {
  const char* raw = std::getenv("HB_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(raw, raw + std::char_traits<char>::length(raw), value);
  if (ec != std::errc() || *ptr != '\0') throw InputError("HB_THREADS must be a non-negative integer");
  return value;
}

std::vector<std::string> write_simulation(const SimulateConfig& config, const std::string& out_dir,
                                          unsigned threads) {
  config.validate();
  ExperimentOptions options;
  options.threads = threads;
  const ExperimentResult result = run_experiment(config.instance, config.policies, config.horizon,
                                                 config.epochs, config.master_seed, options);
  const std::vector<std::string> labels = policy_labels(config.policies);

  OutputSet files(out_dir);
  write_band(files.open("regret_mean.csv"), result, labels, &PolicySummary::mean_regret);
  write_band(files.open("regret_q25.csv"), result, labels, &PolicySummary::q25_regret);
  write_band(files.open("regret_q75.csv"), result, labels, &PolicySummary::q75_regret);

  std::ostringstream& final_csv = files.open("final_regret.csv");
  final_csv << "policy,epoch,regret\n";
  for (std::size_t p = 0; p < result.policies.size(); ++p) {
    const auto& regrets = result.policies[p].final_regrets;
    for (std::size_t e = 0; e < regrets.size(); ++e) {
      final_csv << labels[p] << ',' << e << ',' << format_double(regrets[e]) << '\n';
    }
  }
  std::ostringstream& pulls_csv = files.open("pulls.csv");
  pulls_csv << "policy,arm,mean_pulls\n";
  for (std::size_t p = 0; p < result.policies.size(); ++p) {
    const auto& pulls = result.policies[p].mean_pulls;
    for (std::size_t a = 0; a < pulls.size(); ++a) {
      pulls_csv << labels[p] << ',' << a << ',' << format_double(pulls[a]) << '\n';
    }
  }
  std::vector<std::string> outputs = {"regret_mean.csv", "regret_q25.csv", "regret_q75.csv",
                                      "final_regret.csv", "pulls.csv"};
  if (config.bounds) {
    const double c = hellinger_constant(config);
    std::ostringstream& b = files.open("bounds.csv");
    b << "t,upper_bound,lower_bound\n";
    for (std::uint64_t t : result.timesteps) {
      const double upper = regret_upper_bound_best(config.instance, c, t);
      const double lower =
          t >= 2 ? regret_lower_bound(config.instance, static_cast<double>(t)).value : 0.0;
      b << t << ',' << format_double(upper) << ',' << format_double(lower) << '\n';
    }
    outputs.push_back("bounds.csv");
  }

  json manifest;
  manifest["command"] = "simulate";
  manifest["config"] = json::parse(simulate_config_json(config));
  manifest["version"] = std::string(kVersion);
  manifest["master_seed"] = config.master_seed;
  outputs.push_back("manifest.json");
  manifest["outputs"] = outputs;
  files.open("manifest.json") << manifest.dump(2) << '\n';
  return files.commit();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hellinger-UCB bandit toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  InstanceFlags sim_flags;
  std::string sim_out;
  bool no_bounds = false;
  CLI::App* sim = app.add_subcommand("simulate", "run a multi-epoch regret experiment");
  add_instance_flags(*sim, sim_flags);
  sim->add_option("--epochs", sim_flags.epochs, "number of epochs");
  sim->add_option("--seed", sim_flags.seed, "master seed");
  sim->add_option("--out-dir", sim_out, "output directory")->required();
  sim->add_flag("--no-bounds", no_bounds, "skip bounds.csv");

  InstanceFlags bound_flags;
  double mu_star = 0.0;
  double mu_i = 0.0;
  double epsilon = 0.0;
  std::string bound_csv;
  CLI::App* bound = app.add_subcommand("bound", "evaluate the pull-count and regret bounds");
  add_instance_flags(*bound, bound_flags);
  bound->add_option("--mu-star", mu_star, "optimal mean");
  bound->add_option("--mu-i", mu_i, "sub-optimal mean");
  bound->add_option("--epsilon", epsilon, "fixed epsilon instead of the grid minimizer");
  bound->add_option("--csv", bound_csv, "also write the table as CSV");

  std::size_t num_arms = 10'000;
  std::size_t k = 50;
  std::size_t reps = 1'000;
  std::uint64_t bench_seed = 1;
  double budget_ms = 10.0;
  std::string bench_out;
  CLI::App* bench = app.add_subcommand("rank-bench", "time batch top-k ranking");
  bench->add_option("--num-arms", num_arms, "items per call");
  bench->add_option("--k", k, "items returned");
  bench->add_option("--repetitions", reps, "timed calls");
  bench->add_option("--seed", bench_seed, "synthetic data seed");
  bench->add_option("--budget-ms", budget_ms, "median latency budget");
  bench->add_option("--out-dir", bench_out, "write latency.csv here");

  std::string stats_path;
  double rank_t = std::nan("");
  std::size_t rank_k = 10;
  double rank_c = PolicyConfig{}.c_hellinger;
  CLI::App* rank = app.add_subcommand("rank", "rank items from an id,impressions,clicks CSV");
  rank->add_option("--stats", stats_path, "stats CSV")->required();
  rank->add_option("--t", rank_t, "logical clock (default: total impressions + 1)");
  rank->add_option("--k", rank_k, "items returned");
  rank->add_option("--c-hellinger", rank_c, "exploration constant");

  std::size_t traffic_arms = 20;
  std::uint64_t traffic_horizon = 30'000;
  std::string traffic_policies;
  std::uint64_t traffic_seed = 1;
  std::string traffic_out;
  CLI::App* traffic = app.add_subcommand("traffic", "shared-traffic policy comparison");
  traffic->add_option("--arms", traffic_arms, "number of content arms");
  traffic->add_option("--horizon", traffic_horizon, "total impressions");
  traffic->add_option("--policies", traffic_policies, "comma-separated policy list");
  traffic->add_option("--seed", traffic_seed, "seed");
  traffic->add_option("--out-dir", traffic_out, "output directory")->required();

  double perturbation = 0.0;
  CLI::App* selfcheck = app.add_subcommand("selfcheck", "run numerical health checks");
  selfcheck->add_option("--inject-fault", perturbation, "perturb the closed-form quadratic")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*sim) return cmd_simulate(sim_flags, *sim, sim_out, no_bounds, out);
    if (*bound) return cmd_bound(bound_flags, *bound, mu_star, mu_i, epsilon, bound_csv, out);
    if (*bench) return cmd_rank_bench(num_arms, k, reps, bench_seed, budget_ms, bench_out, out);
    if (*rank) return cmd_rank(stats_path, rank_t, rank_k, rank_c, out);
    if (*traffic) {
      return cmd_traffic(traffic_arms, traffic_horizon, traffic_policies, traffic_seed,
                         traffic_out, out);
    }
    if (*selfcheck) return cmd_selfcheck(perturbation, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kInputError;
}

}  // namespace hb::cli
