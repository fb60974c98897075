// twtsim: experiment driver for TWT interval assignment.
//
//   twtsim run <config>          one simulation, one CSV row
//   twtsim sweep <config>        lambda x V x T x algorithm x seed grid
//   twtsim oracle-check          JTWSA vs. exhaustive search on small instances
//   twtsim print-config [config] effective configuration
//
// Exit codes: 0 ok, 1 config error, 2 lemma-1 violation, 3 oracle mismatch.

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "twt/config.hpp"
#include "twt/oracle.hpp"
#include "twt/sim.hpp"
#include "twt/sweep.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitLemma1 = 2;
constexpr int kExitOracle = 3;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> epochs;
  std::string out;
  unsigned parallel = 0;
  bool check_lemma1 = false;
  std::optional<double> epsilon;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool config_required) {
  auto* opt = cmd->add_option("config", f.config, "key = value config file");
  if (config_required) opt->required();
  cmd->add_option("--seed", f.seed, "override the master seed");
  cmd->add_option("--epochs", f.epochs, "override the number of epochs");
  cmd->add_option("--out", f.out, "output path (default stdout)");
  cmd->add_option("--parallel", f.parallel, "worker threads, 0 = sequential");
  cmd->add_flag("--check-lemma1", f.check_lemma1, "fail on any per-epoch drift-bound violation");
}

twt::SweepSpec load(const CommonFlags& f) {
  twt::SweepSpec spec = f.config.empty() ? twt::parse_config_text("") : twt::parse_config(f.config);
  if (f.seed) {
    spec.base.seed = *f.seed;
    spec.seeds = {*f.seed};
  }
  if (f.epochs) spec.base.num_epochs = *f.epochs;
  twt::validate(spec);
  return spec;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw twt::ConfigError("--out", "cannot open " + path);
  out << text;
}

int cmd_run(const CommonFlags& f) {
  if (f.epsilon && !(*f.epsilon > 0.0)) throw twt::ConfigError("--epsilon", "must be positive");
  const auto spec = load(f);
  const auto& cfg = spec.base;
  twt::RunOptions opts;
  opts.stop_on_lemma1_violation = f.check_lemma1;
  const auto result = twt::run_simulation(cfg, opts);

  twt::SweepRow row;
  row.sweep_id = twt::sweep_id(spec);
  row.seed = cfg.seed;
  row.algorithm = cfg.algorithm;
  row.t_s = cfg.timing.epoch_len();
  row.v = cfg.v;
  row.lambda = cfg.traffic.lambda_files_per_s;
  row.metrics = result.metrics;
  row.constants = twt::theorem_constants(cfg);
  emit(twt::to_csv({row}), f.out);
  if (f.epsilon)
    std::cerr << "queue bound (epsilon=" << *f.epsilon
              << "): " << twt::queue_bound(row.constants, cfg.v, *f.epsilon) << " bits\n";

  if (f.check_lemma1) {
    std::cerr << "lemma1: " << result.lemma1_violations << " violations over "
              << result.epochs.size() << " epochs\n";
    if (result.lemma1_violations > 0) {
      std::cerr << "lemma1: first violation at epoch " << *result.first_violation << "\n";
      return kExitLemma1;
    }
  }
  return 0;
}

int cmd_sweep(const CommonFlags& f) {
  const auto spec = load(f);
  const auto rows = twt::run_sweep(spec, f.parallel);
  emit(twt::to_csv(rows), f.out);
  if (f.check_lemma1) {
    std::size_t bad = 0;
    for (const auto& r : rows) bad += r.lemma1_violations;
    std::cerr << "lemma1: " << bad << " violations across " << rows.size() << " runs\n";
    if (bad > 0) return kExitLemma1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TWT interval assignment simulator"};
  app.require_subcommand(1);

  CommonFlags run_flags, sweep_flags, print_flags;
  auto* run = app.add_subcommand("run", "simulate one configuration");
  add_common(run, run_flags, true);
  run->add_option("--epsilon", run_flags.epsilon, "report the queue bound for this arrival slack");
  auto* sweep = app.add_subcommand("sweep", "simulate the configured grid");
  add_common(sweep, sweep_flags, true);
  auto* print = app.add_subcommand("print-config", "print the effective configuration");
  print->add_option("config", print_flags.config, "config file (default: built-in)");
  print->add_option("--out", print_flags.out, "output path (default stdout)");

  twt::OracleCheckOptions oracle_opts;
  std::string oracle_out;
  bool corrupt = false;
  auto* oracle = app.add_subcommand("oracle-check", "compare JTWSA with exhaustive search");
  oracle->add_option("--trials", oracle_opts.trials, "random instances")->capture_default_str();
  oracle->add_option("--max-m", oracle_opts.max_m, "max stations")->capture_default_str();
  oracle->add_option("--max-l", oracle_opts.max_l, "max intervals")->capture_default_str();
  oracle->add_option("--max-k", oracle_opts.max_k, "max capacity")->capture_default_str();
  oracle->add_option("--seed", oracle_opts.seed, "instance seed")->capture_default_str();
  oracle->add_option("--out", oracle_out, "output path (default stdout)");
  oracle->add_flag("--corrupt-greedy", corrupt, "test hook: fill intervals lightest-first");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(run_flags);
    if (*sweep) return cmd_sweep(sweep_flags);
    if (*print) {
      emit(twt::serialize_config(load(print_flags)), print_flags.out);
      return 0;
    }
    if (*oracle) {
      if (oracle_opts.max_m < 1 || oracle_opts.max_l < 1 || oracle_opts.max_k < 1)
        throw twt::ConfigError("oracle-check", "instance bounds must be at least 1");
      if (oracle_opts.max_m > twt::kMaxOracleStations)
        throw twt::ConfigError("--max-m", "exceeds the enumeration budget");
      if (corrupt) oracle_opts.fill_order = twt::FillOrder::kAscendingWeight;
      const auto report = twt::oracle_check(oracle_opts);
      emit(report.to_text(), oracle_out);
      return report.ok() ? 0 : kExitOracle;
    }
  } catch (const twt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const twt::OracleError& e) {
    std::cerr << "oracle error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
