#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "twt/model.hpp"
#include "twt/scheduler.hpp"
#include "twt/traffic.hpp"

namespace twt {

enum class Algorithm { kJtwsa, kRandom };

std::string_view to_string(Algorithm a);
std::string_view to_string(SleepSemantics s);

/// Full configuration of one simulation run. Defaults are the baseline scenario
/// at T = 1 s, V = 1000, lambda = 1 file/s.
struct SimConfig {
  std::size_t num_stations = 50;
  EpochTiming timing = default_timing();
  EnergyParams energy;
  TrafficParams traffic;
  RateModel rates;
  double v = 1000.0;
  std::int64_t k_capacity = 5;
  Algorithm algorithm = Algorithm::kJtwsa;
  std::int64_t num_epochs = 300;
  std::uint64_t seed = 1;
  SleepSemantics sleep_semantics = SleepSemantics::kFullSleep;
  double stability_threshold_frac = 0.01;  // of the mean per-slot arrival bits
  double stability_window = 0.5;           // trailing fraction of the run fitted

  /// 1 s epochs of 1 ms slots; nine intervals 50, 100, ..., 450 ms.
  static EpochTiming default_timing();

  double e_s() const { return session_energy(energy); }
  double e_sleep() const { return sleep_energy(energy, timing.slot_len); }
  SchedulerParams scheduler_params() const { return {v, k_capacity, e_s() - e_sleep()}; }

  bool operator==(const SimConfig&) const = default;
};

/// Grid of runs. Rows are produced for every (lambda, V, T, algorithm, seed)
/// in that nesting order, each list walked in the order given.
struct SweepSpec {
  SimConfig base;
  std::vector<double> lambda_grid{0.2, 1.0 / 4.5, 0.25, 1.0 / 3.5, 1.0 / 3.0,
                                  0.4, 0.5,       1.0 / 1.5, 1.0, 2.0};
  std::vector<double> v_grid{1000.0, 5000.0};
  std::vector<double> t_grid{1.0};
  std::vector<Algorithm> algorithms{Algorithm::kJtwsa, Algorithm::kRandom};
  std::vector<std::uint64_t> seeds{1};
  std::size_t max_points = 10000;

  std::size_t num_points() const {
    return lambda_grid.size() * v_grid.size() * t_grid.size() * algorithms.size() * seeds.size();
  }

  bool operator==(const SweepSpec&) const = default;
};

/// Raised for any invalid setting; `key()` names the offending config key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

void validate(const SimConfig& cfg);
void validate(const SweepSpec& spec);

/// Converts a duration in seconds to a whole number of slots; throws
/// ConfigError under `key` when it is not an integer multiple.
std::int64_t to_slots(double seconds, double slot_len, const std::string& key);

/// Flat `key = value` text, `#` comments, comma-separated lists. Omitted
/// keys keep their defaults. The result is validated.
SweepSpec parse_config_text(std::string_view text);
SweepSpec parse_config(const std::filesystem::path& path);

/// Emits every key, so parse_config_text(serialize_config(s)) == s.
std::string serialize_config(const SweepSpec& spec);

/// Copy of `base` with epoch length replaced by `epoch_len_s` seconds.
SimConfig with_epoch_length(const SimConfig& base, double epoch_len_s);

}  // namespace twt
