#include "twt/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace twt {

namespace {

// Ratios of decimal-second quantities are rarely exact in binary.
constexpr double kRatioSlack = 1e-9;

}  // namespace

void validate(const EnergyParams& ep) {
  if (!(ep.p_down >= 0.0) || !(ep.p_up >= 0.0) || !(ep.p_sleep >= 0.0))
    throw ModelError("power levels must be nonnegative");
  if (!(ep.t_up_session > 0.0)) throw ModelError("t_up must be positive");
  if (!(ep.frac_down >= 0.0) || !(ep.frac_up >= 0.0) || ep.frac_down + ep.frac_up > 1.0)
    throw ModelError("session fractions must be nonnegative and sum to at most 1");
}

void validate(const EpochTiming& timing) {
  if (!(timing.slot_len > 0.0)) throw ModelError("slot length must be positive");
  if (timing.slots_per_epoch < 1) throw ModelError("epoch must span at least one slot");
  if (timing.interval_slots.empty()) throw ModelError("interval set is empty");
  std::int64_t prev = 0;
  for (auto slots : timing.interval_slots) {
    if (slots <= prev) throw ModelError("interval set must be strictly increasing and positive");
    if (slots > timing.slots_per_epoch) throw ModelError("interval longer than the epoch");
    prev = slots;
  }
}

double session_energy(const EnergyParams& ep) {
  return ep.p_down * ep.frac_down * ep.t_up_session + ep.p_up * ep.frac_up * ep.t_up_session;
}

double sleep_energy(const EnergyParams& ep, double slot_len) { return ep.p_sleep * slot_len; }

std::int64_t sessions_per_epoch(double epoch_len, double interval) {
  if (!(interval > 0.0)) throw ModelError("interval must be positive");
  const double ratio = epoch_len / interval;
  if (ratio < 1.0 - kRatioSlack) throw ModelError("interval longer than the epoch");
  return static_cast<std::int64_t>(std::floor(ratio + kRatioSlack));
}

std::int64_t sessions_per_epoch(std::int64_t epoch_slots, std::int64_t interval_slots) {
  if (interval_slots <= 0) throw ModelError("interval must be positive");
  if (interval_slots > epoch_slots) throw ModelError("interval longer than the epoch");
  return epoch_slots / interval_slots;
}

double epoch_energy(std::int64_t n_sessions, double e_s, double e_sleep,
                    std::int64_t slots_per_epoch) {
  if (n_sessions < 0 || n_sessions > slots_per_epoch)
    throw ModelError("session count " + std::to_string(n_sessions) + " outside [0, " +
                     std::to_string(slots_per_epoch) + "]");
  return e_s * static_cast<double>(n_sessions) +
         static_cast<double>(slots_per_epoch - n_sessions) * e_sleep;
}

QueueState queue_update(QueueState q, double served_bits, double arrived_bits) {
  return {std::max(q.backlog_bits - served_bits, 0.0) + arrived_bits};
}

}  // namespace twt
