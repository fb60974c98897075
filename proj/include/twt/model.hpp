#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace twt {

/// Power levels and session-time fractions of a station radio.
///
/// A TWT session lasts `t_up_session` seconds; `frac_down` and `frac_up`
/// are the fractions of that session spent receiving and transmitting.
struct EnergyParams {
  double p_down = 1.0;          // W
  double p_up = 1.0;            // W
  double p_sleep = 0.15;        // W
  double t_up_session = 0.001;  // s
  double frac_down = 0.0;
  double frac_up = 1.0;

  bool operator==(const EnergyParams&) const = default;
};

/// Epoch/slot geometry. All times are held as integer mini-slot counts.
struct EpochTiming {
  double slot_len = 0.001;  // s
  std::int64_t slots_per_epoch = 1000;
  std::vector<std::int64_t> interval_slots;  // strictly increasing

  std::size_t num_intervals() const { return interval_slots.size(); }
  double epoch_len() const { return static_cast<double>(slots_per_epoch) * slot_len; }
  double interval_len(std::size_t l) const {
    return static_cast<double>(interval_slots.at(l)) * slot_len;
  }

  bool operator==(const EpochTiming&) const = default;
};

struct QueueState {
  double backlog_bits = 0.0;
};

class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws ModelError when a field is out of range.
void validate(const EnergyParams& ep);
void validate(const EpochTiming& timing);

/// Energy spent in one awake session, in joules.
double session_energy(const EnergyParams& ep);

/// Energy spent asleep for one mini-slot of `slot_len` seconds.
double sleep_energy(const EnergyParams& ep, double slot_len);

/// Number of wake-ups in an epoch, floor(epoch / interval). Both arguments
/// are in seconds; the slot-count overload is what the simulator uses.
std::int64_t sessions_per_epoch(double epoch_len, double interval);
std::int64_t sessions_per_epoch(std::int64_t epoch_slots, std::int64_t interval_slots);

/// Epoch energy of a station that wakes `n_sessions` times and sleeps in
/// every other slot.
double epoch_energy(std::int64_t n_sessions, double e_s, double e_sleep,
                    std::int64_t slots_per_epoch);

/// One mini-slot of the queue recursion: serve, clamp at zero, then admit.
QueueState queue_update(QueueState q, double served_bits, double arrived_bits);

}  // namespace twt
