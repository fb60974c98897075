#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "twt/config.hpp"
#include "twt/random.hpp"
#include "twt/scheduler.hpp"

namespace twt {

struct StationState {
  QueueState queue;
  double rate_bps = 0.0;  // held for the current epoch
};

/// Source of per-slot arrivals, called once per station per slot in slot
/// order.
class ArrivalSource {
 public:
  virtual ~ArrivalSource() = default;
  virtual double draw(std::size_t station) = 0;
};

/// Truncated-Poisson file arrivals, one independent stream per station.
class PoissonArrivals final : public ArrivalSource {
 public:
  explicit PoissonArrivals(const SimConfig& cfg);
  double draw(std::size_t station) override;

 private:
  std::vector<RandomStream> streams_;
  double mean_;
  double exp_neg_mean_;
  std::int64_t cap_;
  double file_bits_;
};

/// Slot-by-slot record of one epoch, kept only when requested.
/// Layout is slot-major: value(slot, station) = data[slot * M + station].
struct EpochTrace {
  std::size_t num_stations = 0;
  std::vector<double> queue;         // (S + 1) rows: backlog entering each slot, then final
  std::vector<double> arrivals;      // S rows
  std::vector<double> service;       // S rows, offered service R_m(tau)
  std::vector<std::uint8_t> awake;   // S rows

  double queue_at(std::size_t slot, std::size_t m) const { return queue[slot * num_stations + m]; }
  double arrival_at(std::size_t slot, std::size_t m) const { return arrivals[slot * num_stations + m]; }
  double service_at(std::size_t slot, std::size_t m) const { return service[slot * num_stations + m]; }
  bool awake_at(std::size_t slot, std::size_t m) const { return awake[slot * num_stations + m] != 0; }
};

struct EpochStats {
  std::int64_t epoch_index = 0;
  EpochAssignment assignment;
  std::vector<double> bits_per_session;
  std::vector<double> energy;            // E_m^t, joules
  std::vector<std::int64_t> wake_slots;  // slots charged E_s
  std::vector<std::int64_t> sleep_slots; // slots charged E_sleep
  std::vector<double> queue_start;       // Q_m at the epoch boundary
  std::vector<double> queue_end;
  double slot_queue_sum = 0.0;           // sum over slots and stations of Q_m(tau)
  double sum_queue_arrival = 0.0;        // sum Q_m(tau) A_m(tau)
  double sum_queue_service = 0.0;        // sum Q_m(tau) R_m(tau)
  double drift_lhs = 0.0;
  double drift_rhs = 0.0;
  std::optional<EpochTrace> trace;

  double total_energy() const;
};

struct RunMetrics {
  double avg_energy_per_epoch = 0.0;
  double avg_queue_slotwise = 0.0;
  double avg_queue_epoch_sampled = 0.0;
  bool stable = true;
  double queue_slope = 0.0;
};

struct RunOptions {
  bool record_traces = false;
  bool stop_on_lemma1_violation = false;
};

struct SimResult {
  RunMetrics metrics;
  std::vector<EpochStats> epochs;
  std::vector<double> slot_queue_series;  // sum_m Q_m entering each slot
  std::size_t lemma1_violations = 0;
  std::optional<std::int64_t> first_violation;
};

struct TheoremConstants {
  double b1 = 0.0;
  double b2 = 0.0;
  double e_max = 0.0;
};

/// Lemma/theorem constants in slot units: T is slots per epoch, R_max and
/// A_max are bits per slot.
TheoremConstants theorem_constants(double num_stations, double slots_per_epoch,
                                   double r_max_bits, double a_max_bits, double e_s);
TheoremConstants theorem_constants(const SimConfig& cfg);

/// Time-average queue bound (B2 + V * E_max) / epsilon for an arrival slack
/// epsilon > 0. Diagnostic only; epsilon is not known in general.
double queue_bound(const TheoremConstants& c, double v, double epsilon);

/// Runs one epoch in place on `stations`. The assignment is held fixed;
/// assigned stations wake at relative slots that are positive multiples of
/// their period and are offered `bits_per_session` each time.
EpochStats run_epoch(std::span<StationState> stations, const EpochAssignment& assignment,
                     const SimConfig& cfg, ArrivalSource& arrivals, std::int64_t epoch_index = 0,
                     bool record_trace = false, std::vector<double>* slot_series = nullptr);

/// Per-epoch drift-bound check on realized sums:
///   1/2 sum[Q(t+T)^2 - Q(t)^2] + V sum E <= B1 + sum QA - sum QR + V sum E
bool lemma1_check(const EpochStats& stats, const SimConfig& cfg);

/// Full run: draw rates, snapshot queues, assign, simulate, per epoch.
SimResult run_simulation(const SimConfig& cfg, const RunOptions& opts = {});
SimResult run_simulation(const SimConfig& cfg, ArrivalSource& arrivals,
                         const RunOptions& opts = {});

struct StabilityResult {
  bool stable = true;
  double slope = 0.0;  // bits per slot
};

inline constexpr std::size_t kMinStabilitySeries = 1000;

/// Least-squares slope of the trailing `window` fraction of `series`;
/// stable when the slope does not exceed `threshold`. Throws
/// std::invalid_argument for series shorter than kMinStabilitySeries.
StabilityResult stability_check(std::span<const double> series, double threshold,
                                double window = 0.5);

/// Ordinary least-squares slope of y against its index.
double least_squares_slope(std::span<const double> y);

}  // namespace twt
