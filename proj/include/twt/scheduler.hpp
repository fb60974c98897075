#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "twt/model.hpp"
#include "twt/random.hpp"

namespace twt {

/// What the scheduler sees of a station at an epoch boundary.
struct StationSnapshot {
  std::size_t station_id = 0;
  double backlog_bits = 0.0;
  double bits_per_session = 0.0;
};

struct SchedulerParams {
  double v = 1000.0;
  std::int64_t k_capacity = 5;
  double wake_cost = 0.0;  // E_s - E_sleep, joules
};

/// How stations left without an interval spend the epoch.
enum class SleepSemantics {
  kFullSleep,      // zero sessions
  kSingleSession,  // one session at the epoch's last slot (interval = epoch)
};

/// Station -> interval index (0-based into EpochTiming::interval_slots), or
/// nullopt for SLEEP.
class EpochAssignment {
 public:
  EpochAssignment() = default;
  explicit EpochAssignment(std::size_t num_stations) : interval_(num_stations) {}

  std::size_t size() const { return interval_.size(); }
  const std::optional<std::size_t>& at(std::size_t station) const { return interval_.at(station); }
  void assign(std::size_t station, std::size_t interval) { interval_.at(station) = interval; }
  void sleep(std::size_t station) { interval_.at(station).reset(); }
  bool asleep(std::size_t station) const { return !interval_.at(station).has_value(); }

  /// Stations assigned to interval `l`.
  std::int64_t load(std::size_t l) const;

  /// True when no interval holds more than `k_capacity` stations and every
  /// index is below `num_intervals`.
  bool feasible(std::size_t num_intervals, std::int64_t k_capacity) const;

  /// Wake-up period in slots for `station`; nullopt means it never wakes.
  std::optional<std::int64_t> period_slots(std::size_t station, const EpochTiming& timing,
                                           SleepSemantics sleep) const;

  /// Sessions the station gets this epoch.
  std::int64_t n_sessions(std::size_t station, const EpochTiming& timing,
                          SleepSemantics sleep = SleepSemantics::kFullSleep) const;

  bool operator==(const EpochAssignment&) const = default;

 private:
  std::vector<std::optional<std::size_t>> interval_;
};

/// Q*R - V*(E_s - E_sleep)
double sta_weight(const StationSnapshot& s, const SchedulerParams& p);

/// Order in which ranked stations fill the intervals. Only kAscendingWeight
/// exists for mutation testing of the oracle harness.
enum class FillOrder { kDescendingWeight, kAscendingWeight };

/// Core of JTWSA on raw weights: keep the `num_intervals * k_capacity`
/// heaviest entries (ties to the lower index), drop nonpositive ones, and
/// hand out intervals K at a time starting from the shortest.
EpochAssignment assign_by_weight(std::span<const double> weights, std::size_t num_intervals,
                                 std::int64_t k_capacity,
                                 FillOrder order = FillOrder::kDescendingWeight);

EpochAssignment jtwsa_assign(std::span<const StationSnapshot> stations, const EpochTiming& timing,
                             const SchedulerParams& p,
                             FillOrder order = FillOrder::kDescendingWeight);

/// Benchmark: a uniformly random set of min(M, L*K) stations is spread over
/// uniformly shuffled interval seats (K seats per interval).
EpochAssignment random_assign(RandomStream& rng, std::size_t num_stations,
                              const EpochTiming& timing, std::int64_t k_capacity);

}  // namespace twt
