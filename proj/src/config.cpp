#include "twt/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace twt {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

template <typename T>
T parse_number(std::string_view text, const std::string& key) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty())
    throw ConfigError(key, "cannot parse '" + std::string(text) + "' as a number");
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) throw ConfigError(key, "value must be finite");
  }
  return value;
}

template <typename T>
std::vector<T> parse_number_list(std::string_view text, const std::string& key) {
  std::vector<T> out;
  for (auto item : split_list(text)) out.push_back(parse_number<T>(item, key));
  return out;
}

Algorithm parse_algorithm(std::string_view s, const std::string& key) {
  if (s == "jtwsa") return Algorithm::kJtwsa;
  if (s == "random") return Algorithm::kRandom;
  throw ConfigError(key, "unknown algorithm '" + std::string(s) + "'");
}

SleepSemantics parse_sleep(std::string_view s, const std::string& key) {
  if (s == "full_sleep") return SleepSemantics::kFullSleep;
  if (s == "single_session") return SleepSemantics::kSingleSession;
  throw ConfigError(key, "expected full_sleep or single_session");
}

std::string fmt(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

template <typename T>
std::string fmt_int(T x) {
  return std::to_string(x);
}

template <typename Seq, typename F>
std::string fmt_list(const Seq& xs, F&& f) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += f(xs[i]);
  }
  return out;
}

}  // namespace

std::string_view to_string(Algorithm a) {
  return a == Algorithm::kJtwsa ? "jtwsa" : "random";
}

std::string_view to_string(SleepSemantics s) {
  return s == SleepSemantics::kFullSleep ? "full_sleep" : "single_session";
}

EpochTiming SimConfig::default_timing() {
  EpochTiming t;
  t.slot_len = 0.001;
  t.slots_per_epoch = 1000;
  for (std::int64_t ms = 50; ms <= 450; ms += 50) t.interval_slots.push_back(ms);
  return t;
}

std::int64_t to_slots(double seconds, double slot_len, const std::string& key) {
  if (!(seconds > 0.0)) throw ConfigError(key, "duration must be positive");
  const double ratio = seconds / slot_len;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio))
    throw ConfigError(key, fmt(seconds) + " s is not an integer multiple of the slot length " +
                               fmt(slot_len) + " s");
  return static_cast<std::int64_t>(rounded);
}

void validate(const SimConfig& cfg) {
  auto check = [](const char* key, auto&& fn) {
    try {
      fn();
    } catch (const ModelError& e) {
      throw ConfigError(key, e.what());
    }
  };
  if (cfg.num_stations < 1) throw ConfigError("num_stations", "need at least one station");
  if (cfg.k_capacity < 1) throw ConfigError("k_capacity", "capacity must be at least 1");
  if (cfg.num_epochs < 1) throw ConfigError("num_epochs", "need at least one epoch");
  if (!(cfg.v >= 0.0)) throw ConfigError("v", "V must be nonnegative");
  check("intervals_s", [&] { validate(cfg.timing); });
  check("energy", [&] { validate(cfg.energy); });
  check("traffic", [&] { validate(cfg.traffic); });
  check("rates_bps", [&] { validate(cfg.rates); });
  if (std::abs(cfg.energy.t_up_session - cfg.timing.slot_len) >
      1e-12 * std::max(1.0, cfg.timing.slot_len))
    throw ConfigError("t_up_s", "session length must equal the slot length");
  if (cfg.e_s() < cfg.e_sleep())
    throw ConfigError("p_sleep_w", "sleep energy per slot exceeds session energy");
  if (!(cfg.stability_threshold_frac >= 0.0))
    throw ConfigError("stability_threshold_frac", "must be nonnegative");
  if (!(cfg.stability_window > 0.0 && cfg.stability_window <= 1.0))
    throw ConfigError("stability_window", "must lie in (0, 1]");
}

void validate(const SweepSpec& spec) {
  validate(spec.base);
  if (spec.lambda_grid.empty()) throw ConfigError("lambda_grid", "grid is empty");
  if (spec.v_grid.empty()) throw ConfigError("v_grid", "grid is empty");
  if (spec.t_grid.empty()) throw ConfigError("t_grid", "grid is empty");
  if (spec.algorithms.empty()) throw ConfigError("algorithms", "grid is empty");
  if (spec.seeds.empty()) throw ConfigError("seeds", "grid is empty");
  for (double l : spec.lambda_grid)
    if (!(l >= 0.0)) throw ConfigError("lambda_grid", "arrival rates must be nonnegative");
  for (double v : spec.v_grid)
    if (!(v >= 0.0)) throw ConfigError("v_grid", "V must be nonnegative");
  for (double t : spec.t_grid)
    if (!(t > 0.0)) throw ConfigError("t_grid", "epoch length must be positive");
  if (spec.num_points() > spec.max_points)
    throw ConfigError("max_points", "sweep has " + std::to_string(spec.num_points()) +
                                        " points, budget is " + std::to_string(spec.max_points));
}

SimConfig with_epoch_length(const SimConfig& base, double epoch_len_s) {
  SimConfig cfg = base;
  cfg.timing.slots_per_epoch = to_slots(epoch_len_s, cfg.timing.slot_len, "t_grid");
  return cfg;
}

SweepSpec parse_config_text(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    if (!kv.emplace(key, std::string(trim(line.substr(eq + 1)))).second)
      throw ConfigError(key, "duplicate key");
  }

  SweepSpec spec;
  SimConfig& c = spec.base;

  // Each handler consumes its key from `kv`; leftovers are unknown keys.
  auto take = [&kv](const char* key, auto&& apply) {
    auto it = kv.find(key);
    if (it == kv.end()) return;
    apply(std::string_view(it->second), std::string(key));
    kv.erase(it);
  };
  auto real = [&take](const char* key, double& dst) {
    take(key, [&](std::string_view v, const std::string& k) { dst = parse_number<double>(v, k); });
  };

  take("num_stations", [&](auto v, const auto& k) { c.num_stations = parse_number<std::size_t>(v, k); });
  take("k_capacity", [&](auto v, const auto& k) { c.k_capacity = parse_number<std::int64_t>(v, k); });
  take("num_epochs", [&](auto v, const auto& k) { c.num_epochs = parse_number<std::int64_t>(v, k); });
  take("seed", [&](auto v, const auto& k) { c.seed = parse_number<std::uint64_t>(v, k); });
  take("arrival_cap_files_per_slot", [&](auto v, const auto& k) {
    c.traffic.arrival_cap_files_per_slot = parse_number<std::int64_t>(v, k);
  });
  real("p_down_w", c.energy.p_down);
  real("p_up_w", c.energy.p_up);
  real("p_sleep_w", c.energy.p_sleep);
  real("frac_down", c.energy.frac_down);
  real("frac_up", c.energy.frac_up);
  real("file_size_bits", c.traffic.file_size_bits);
  real("lambda_files_per_s", c.traffic.lambda_files_per_s);
  real("v", c.v);
  real("stability_threshold_frac", c.stability_threshold_frac);
  real("stability_window", c.stability_window);
  take("rates_bps", [&](auto v, const auto& k) { c.rates.rate_set_bps = parse_number_list<double>(v, k); });
  take("algorithm", [&](auto v, const auto& k) { c.algorithm = parse_algorithm(v, k); });
  take("sleep_semantics", [&](auto v, const auto& k) { c.sleep_semantics = parse_sleep(v, k); });

  // Times: slot length first, the rest are converted to slot counts.
  real("slot_len_s", c.timing.slot_len);
  if (!(c.timing.slot_len > 0.0)) throw ConfigError("slot_len_s", "slot length must be positive");
  c.energy.t_up_session = c.timing.slot_len;
  real("t_up_s", c.energy.t_up_session);
  double epoch_len = 1.0;
  real("epoch_len_s", epoch_len);
  c.timing.slots_per_epoch = to_slots(epoch_len, c.timing.slot_len, "epoch_len_s");
  const bool intervals_given = kv.contains("intervals_s");
  take("intervals_s", [&](auto v, const auto& k) {
    c.timing.interval_slots.clear();
    for (double s : parse_number_list<double>(v, k))
      c.timing.interval_slots.push_back(to_slots(s, c.timing.slot_len, k));
  });
  if (!intervals_given) {
    // the baseline intervals are defined in seconds; re-express them in the
    // configured slot length.
    c.timing.interval_slots.clear();
    for (std::int64_t ms = 50; ms <= 450; ms += 50)
      c.timing.interval_slots.push_back(
          to_slots(static_cast<double>(ms) * 1e-3, c.timing.slot_len, "intervals_s"));
  }

  take("lambda_grid", [&](auto v, const auto& k) { spec.lambda_grid = parse_number_list<double>(v, k); });
  take("v_grid", [&](auto v, const auto& k) { spec.v_grid = parse_number_list<double>(v, k); });
  take("t_grid", [&](auto v, const auto& k) { spec.t_grid = parse_number_list<double>(v, k); });
  take("seeds", [&](auto v, const auto& k) { spec.seeds = parse_number_list<std::uint64_t>(v, k); });
  take("max_points", [&](auto v, const auto& k) { spec.max_points = parse_number<std::size_t>(v, k); });
  take("algorithms", [&](auto v, const auto& k) {
    spec.algorithms.clear();
    for (auto item : split_list(v)) spec.algorithms.push_back(parse_algorithm(item, k));
  });

  if (!kv.empty()) throw ConfigError(kv.begin()->first, "unknown key");
  validate(spec);
  return spec;
}

SweepSpec parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("path", "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string serialize_config(const SweepSpec& spec) {
  const SimConfig& c = spec.base;
  const double slot = c.timing.slot_len;
  std::ostringstream os;
  os << "# stations and scheduling\n"
     << "num_stations = " << c.num_stations << "\n"
     << "k_capacity = " << c.k_capacity << "\n"
     << "v = " << fmt(c.v) << "\n"
     << "algorithm = " << to_string(c.algorithm) << "\n"
     << "sleep_semantics = " << to_string(c.sleep_semantics) << "\n"
     << "# timing\n"
     << "slot_len_s = " << fmt(slot) << "\n"
     << "t_up_s = " << fmt(c.energy.t_up_session) << "\n"
     << "epoch_len_s = " << fmt(static_cast<double>(c.timing.slots_per_epoch) * slot) << "\n"
     << "intervals_s = "
     << fmt_list(c.timing.interval_slots,
                 [slot](std::int64_t s) { return fmt(static_cast<double>(s) * slot); })
     << "\n"
     << "# energy\n"
     << "p_down_w = " << fmt(c.energy.p_down) << "\n"
     << "p_up_w = " << fmt(c.energy.p_up) << "\n"
     << "p_sleep_w = " << fmt(c.energy.p_sleep) << "\n"
     << "frac_down = " << fmt(c.energy.frac_down) << "\n"
     << "frac_up = " << fmt(c.energy.frac_up) << "\n"
     << "# traffic and channel\n"
     << "file_size_bits = " << fmt(c.traffic.file_size_bits) << "\n"
     << "lambda_files_per_s = " << fmt(c.traffic.lambda_files_per_s) << "\n"
     << "arrival_cap_files_per_slot = " << c.traffic.arrival_cap_files_per_slot << "\n"
     << "rates_bps = " << fmt_list(c.rates.rate_set_bps, fmt) << "\n"
     << "# run\n"
     << "num_epochs = " << c.num_epochs << "\n"
     << "seed = " << c.seed << "\n"
     << "stability_threshold_frac = " << fmt(c.stability_threshold_frac) << "\n"
     << "stability_window = " << fmt(c.stability_window) << "\n"
     << "# sweep\n"
     << "lambda_grid = " << fmt_list(spec.lambda_grid, fmt) << "\n"
     << "v_grid = " << fmt_list(spec.v_grid, fmt) << "\n"
     << "t_grid = " << fmt_list(spec.t_grid, fmt) << "\n"
     << "algorithms = "
     << fmt_list(spec.algorithms, [](Algorithm a) { return std::string(to_string(a)); }) << "\n"
     << "seeds = " << fmt_list(spec.seeds, fmt_int<std::uint64_t>) << "\n"
     << "max_points = " << spec.max_points << "\n";
  return os.str();
}

}  // namespace twt
