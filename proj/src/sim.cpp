#include "twt/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "twt/traffic.hpp"

namespace twt {

PoissonArrivals::PoissonArrivals(const SimConfig& cfg)
    : mean_(cfg.traffic.lambda_files_per_s * cfg.timing.slot_len),
      exp_neg_mean_(std::exp(-mean_)),
      cap_(cfg.traffic.arrival_cap_files_per_slot),
      file_bits_(cfg.traffic.file_size_bits) {
  streams_.reserve(cfg.num_stations);
  for (std::size_t m = 0; m < cfg.num_stations; ++m)
    streams_.emplace_back(cfg.seed, m, StreamTag::kArrivals);
}

double PoissonArrivals::draw(std::size_t station) {
  if (mean_ <= 0.0) return 0.0;
  // same inversion as truncated_poisson, with exp(-mean) cached
  const double u = streams_[station].uniform01();
  double p = exp_neg_mean_;
  double cdf = p;
  std::int64_t k = 0;
  while (u >= cdf && k < cap_) {
    ++k;
    p *= mean_ / static_cast<double>(k);
    cdf += p;
  }
  return static_cast<double>(k) * file_bits_;
}

double EpochStats::total_energy() const {
  return std::accumulate(energy.begin(), energy.end(), 0.0);
}

TheoremConstants theorem_constants(double num_stations, double slots_per_epoch,
                                   double r_max_bits, double a_max_bits, double e_s) {
  const double sq = r_max_bits * r_max_bits + a_max_bits * a_max_bits;
  return {num_stations * slots_per_epoch * sq / 2.0,
          num_stations * slots_per_epoch * slots_per_epoch * sq / 2.0,
          num_stations * slots_per_epoch * e_s};
}

TheoremConstants theorem_constants(const SimConfig& cfg) {
  return theorem_constants(static_cast<double>(cfg.num_stations),
                           static_cast<double>(cfg.timing.slots_per_epoch),
                           service_bits_per_session(cfg.rates.max_rate(), cfg.energy),
                           cfg.traffic.max_arrival_bits(), cfg.e_s());
}

double queue_bound(const TheoremConstants& c, double v, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  return (c.b2 + v * c.e_max) / epsilon;
}

namespace {

void fill_drift_terms(EpochStats& s, const SimConfig& cfg) {
  double start_sq = 0.0;
  double end_sq = 0.0;
  for (double q : s.queue_start) start_sq += q * q;
  for (double q : s.queue_end) end_sq += q * q;
  const double penalty = cfg.v * s.total_energy();
  const double b1 = theorem_constants(cfg).b1;
  s.drift_lhs = 0.5 * (end_sq - start_sq) + penalty;
  s.drift_rhs = b1 + s.sum_queue_arrival - s.sum_queue_service + penalty;
}

}  // namespace

EpochStats run_epoch(std::span<StationState> stations, const EpochAssignment& assignment,
                     const SimConfig& cfg, ArrivalSource& arrivals, std::int64_t epoch_index,
                     bool record_trace, std::vector<double>* slot_series) {
  const std::size_t m_count = stations.size();
  const std::int64_t slots = cfg.timing.slots_per_epoch;
  if (assignment.size() != m_count)
    throw std::invalid_argument("assignment does not cover every station");
  if (!assignment.feasible(cfg.timing.num_intervals(), cfg.k_capacity))
    throw std::invalid_argument("assignment violates interval capacity");

  EpochStats s;
  s.epoch_index = epoch_index;
  s.assignment = assignment;
  s.energy.assign(m_count, 0.0);
  s.wake_slots.assign(m_count, 0);
  s.sleep_slots.assign(m_count, 0);
  s.queue_start.resize(m_count);
  s.bits_per_session.resize(m_count);

  std::vector<std::int64_t> period(m_count, 0);  // 0: never wakes
  for (std::size_t m = 0; m < m_count; ++m) {
    s.queue_start[m] = stations[m].queue.backlog_bits;
    s.bits_per_session[m] = service_bits_per_session(stations[m].rate_bps, cfg.energy);
    period[m] = assignment.period_slots(m, cfg.timing, cfg.sleep_semantics).value_or(0);
  }

  if (record_trace) {
    EpochTrace t;
    t.num_stations = m_count;
    const auto cells = static_cast<std::size_t>(slots) * m_count;
    t.queue.reserve(cells + m_count);
    t.arrivals.reserve(cells);
    t.service.reserve(cells);
    t.awake.reserve(cells);
    s.trace = std::move(t);
  }

  for (std::int64_t j = 1; j <= slots; ++j) {
    double slot_total = 0.0;
    for (std::size_t m = 0; m < m_count; ++m) {
      const double q = stations[m].queue.backlog_bits;
      const bool awake = period[m] != 0 && j % period[m] == 0;
      const double offered = awake ? s.bits_per_session[m] : 0.0;
      const double arrived = arrivals.draw(m);

      slot_total += q;
      s.sum_queue_arrival += q * arrived;
      s.sum_queue_service += q * offered;
      ++(awake ? s.wake_slots[m] : s.sleep_slots[m]);
      if (s.trace) {
        s.trace->queue.push_back(q);
        s.trace->arrivals.push_back(arrived);
        s.trace->service.push_back(offered);
        s.trace->awake.push_back(awake ? 1 : 0);
      }
      stations[m].queue = queue_update(stations[m].queue, offered, arrived);
    }
    s.slot_queue_sum += slot_total;
    if (slot_series) slot_series->push_back(slot_total);
  }

  const double e_s = cfg.e_s();
  const double e_sleep = cfg.e_sleep();
  s.queue_end.resize(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    s.queue_end[m] = stations[m].queue.backlog_bits;
    if (s.trace) s.trace->queue.push_back(s.queue_end[m]);
    // one E_s per wake slot and one E_sleep per sleep slot
    s.energy[m] = e_s * static_cast<double>(s.wake_slots[m]) +
                  static_cast<double>(s.sleep_slots[m]) * e_sleep;
  }
  fill_drift_terms(s, cfg);
  return s;
}

bool lemma1_check(const EpochStats& stats, const SimConfig& cfg) {
  EpochStats copy;
  copy.queue_start = stats.queue_start;
  copy.queue_end = stats.queue_end;
  copy.energy = stats.energy;
  copy.sum_queue_arrival = stats.sum_queue_arrival;
  copy.sum_queue_service = stats.sum_queue_service;
  fill_drift_terms(copy, cfg);
  return copy.drift_lhs <= copy.drift_rhs;
}

double least_squares_slope(std::span<const double> y) {
  const auto n = y.size();
  if (n < 2) return 0.0;
  const double x_mean = static_cast<double>(n - 1) / 2.0;
  const double y_mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = static_cast<double>(i) - x_mean;
    sxy += dx * (y[i] - y_mean);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

namespace {

StabilityResult classify(std::span<const double> series, double threshold, double window) {
  const auto n = series.size();
  auto tail = static_cast<std::size_t>(std::llround(static_cast<double>(n) * window));
  tail = std::clamp<std::size_t>(tail, std::min<std::size_t>(n, 2), n);
  const double slope = least_squares_slope(series.subspan(n - tail));
  return {slope <= threshold, slope};
}

}  // namespace

StabilityResult stability_check(std::span<const double> series, double threshold, double window) {
  if (series.size() < kMinStabilitySeries)
    throw std::invalid_argument("stability check needs at least " +
                                std::to_string(kMinStabilitySeries) + " slots, got " +
                                std::to_string(series.size()));
  return classify(series, threshold, window);
}

SimResult run_simulation(const SimConfig& cfg, const RunOptions& opts) {
  validate(cfg);
  PoissonArrivals arrivals(cfg);
  return run_simulation(cfg, arrivals, opts);
}

SimResult run_simulation(const SimConfig& cfg, ArrivalSource& arrivals, const RunOptions& opts) {
  validate(cfg);
  const std::size_t m_count = cfg.num_stations;
  std::vector<StationState> stations(m_count);
  std::vector<RandomStream> rate_streams;
  rate_streams.reserve(m_count);
  for (std::size_t m = 0; m < m_count; ++m) rate_streams.emplace_back(cfg.seed, m, StreamTag::kRates);
  RandomStream benchmark(cfg.seed, 0, StreamTag::kBenchmark);
  const SchedulerParams params = cfg.scheduler_params();

  SimResult result;
  result.epochs.reserve(static_cast<std::size_t>(cfg.num_epochs));
  std::vector<double> series;
  series.reserve(static_cast<std::size_t>(cfg.num_epochs * cfg.timing.slots_per_epoch));
  double energy_sum = 0.0;
  double sampled_sum = 0.0;

  for (std::int64_t n = 0; n < cfg.num_epochs; ++n) {
    std::vector<StationSnapshot> snaps(m_count);
    for (std::size_t m = 0; m < m_count; ++m) {
      stations[m].rate_bps = draw_rate(rate_streams[m], cfg.rates);
      snaps[m] = {m, stations[m].queue.backlog_bits,
                  service_bits_per_session(stations[m].rate_bps, cfg.energy)};
    }
    const EpochAssignment assignment =
        cfg.algorithm == Algorithm::kJtwsa
            ? jtwsa_assign(snaps, cfg.timing, params)
            : random_assign(benchmark, m_count, cfg.timing, cfg.k_capacity);

    EpochStats stats =
        run_epoch(stations, assignment, cfg, arrivals, n, opts.record_traces, &series);
    energy_sum += stats.total_energy();
    sampled_sum += std::accumulate(stats.queue_start.begin(), stats.queue_start.end(), 0.0);
    const bool ok = lemma1_check(stats, cfg);
    result.epochs.push_back(std::move(stats));
    if (!ok) {
      ++result.lemma1_violations;
      if (!result.first_violation) result.first_violation = n;
      if (opts.stop_on_lemma1_violation) break;
    }
  }

  const double epochs = static_cast<double>(result.epochs.size());
  RunMetrics& rm = result.metrics;
  rm.avg_energy_per_epoch = energy_sum / epochs;
  rm.avg_queue_epoch_sampled = sampled_sum / epochs;
  rm.avg_queue_slotwise =
      std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(series.size());

  const double mean_arrival_bits = static_cast<double>(m_count) *
                                   cfg.traffic.lambda_files_per_s * cfg.timing.slot_len *
                                   cfg.traffic.file_size_bits;
  // Short runs fall below stability_check's minimum length; they are
  // classified with the same rule on whatever series exists.
  const auto verdict =
      classify(series, cfg.stability_threshold_frac * mean_arrival_bits, cfg.stability_window);
  rm.stable = verdict.stable;
  rm.queue_slope = verdict.slope;
  result.slot_queue_series = std::move(series);
  return result;
}

}  // namespace twt
