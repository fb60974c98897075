#include "twt/sweep.hpp"

#include <atomic>
#include <charconv>
#include <cstdio>
#include <exception>
#include <thread>

namespace twt {

namespace {

std::string num(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

std::string sweep_id(const SweepSpec& spec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_config(spec)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SimConfig point_config(const SimConfig& base, double lambda, double v, double t_s,
                       Algorithm algorithm, std::uint64_t seed) {
  SimConfig cfg = with_epoch_length(base, t_s);
  cfg.traffic.lambda_files_per_s = lambda;
  cfg.v = v;
  cfg.algorithm = algorithm;
  cfg.seed = seed;
  return cfg;
}

SweepRow run_point(const SimConfig& cfg, const std::string& id) {
  SweepRow row;
  row.sweep_id = id;
  row.seed = cfg.seed;
  row.algorithm = cfg.algorithm;
  row.t_s = cfg.timing.epoch_len();
  row.v = cfg.v;
  row.lambda = cfg.traffic.lambda_files_per_s;
  try {
    const auto result = run_simulation(cfg);
    row.metrics = result.metrics;
    row.lemma1_violations = result.lemma1_violations;
    row.constants = theorem_constants(cfg);
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned parallel) {
  validate(spec);
  const std::string id = sweep_id(spec);

  struct Point {
    double lambda, v, t;
    Algorithm alg;
    std::uint64_t seed;
  };
  std::vector<Point> points;
  points.reserve(spec.num_points());
  for (double lambda : spec.lambda_grid)
    for (double v : spec.v_grid)
      for (double t : spec.t_grid)
        for (Algorithm alg : spec.algorithms)
          for (std::uint64_t seed : spec.seeds) points.push_back({lambda, v, t, alg, seed});

  std::vector<SweepRow> rows(points.size());
  auto work = [&](std::size_t i) {
    const Point& p = points[i];
    try {
      rows[i] = run_point(point_config(spec.base, p.lambda, p.v, p.t, p.alg, p.seed), id);
    } catch (const std::exception& e) {
      // the point's config itself was invalid (e.g. T not a slot multiple)
      rows[i] = SweepRow{id, p.seed, p.alg, p.t, p.v, p.lambda, std::nullopt, {}, 0, e.what()};
    }
  };

  if (parallel == 0) {
    for (std::size_t i = 0; i < points.size(); ++i) work(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < parallel; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < points.size(); i = next++) work(i);
    });
  pool.clear();
  return rows;
}

std::string csv_row(const SweepRow& row) {
  std::string out = row.sweep_id + "," + std::to_string(row.seed) + "," +
                    std::string(to_string(row.algorithm)) + "," + num(row.t_s) + "," +
                    num(row.v) + "," + num(row.lambda) + ",";
  if (row.metrics) {
    const RunMetrics& m = *row.metrics;
    out += num(m.avg_energy_per_epoch) + "," + num(m.avg_queue_slotwise) + "," +
           num(m.avg_queue_epoch_sampled) + "," + (m.stable ? "true" : "false") + "," +
           num(m.queue_slope) + "," + num(row.constants.b1) + "," + num(row.constants.b2) + "," +
           num(row.constants.e_max) + ",";
  } else {
    out += ",,,,,,,,";
  }
  return out + csv_escape(row.error);
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& row : rows) out += csv_row(row) + "\n";
  return out;
}

}  // namespace twt
