#pragma once

#include <cstdint>
#include <vector>

#include "twt/model.hpp"
#include "twt/random.hpp"

namespace twt {

/// Per-station file arrivals. Each slot admits a Poisson number of files,
/// truncated at `arrival_cap_files_per_slot`.
struct TrafficParams {
  double file_size_bits = 200000.0;  // 25 KB
  double lambda_files_per_s = 1.0;
  std::int64_t arrival_cap_files_per_slot = 10;

  /// Largest possible per-slot arrival in bits (A_max).
  double max_arrival_bits() const {
    return static_cast<double>(arrival_cap_files_per_slot) * file_size_bits;
  }

  bool operator==(const TrafficParams&) const = default;
};

/// Discrete rate set; a station draws one rate uniformly per epoch.
struct RateModel {
  std::vector<double> rate_set_bps{10e6, 20e6, 50e6, 100e6, 150e6, 200e6};

  double max_rate() const { return rate_set_bps.back(); }

  bool operator==(const RateModel&) const = default;
};

void validate(const TrafficParams& tp);
void validate(const RateModel& rm);

/// Truncated Poisson count by sequential inversion. Stops at `cap`.
std::int64_t truncated_poisson(RandomStream& rng, double mean, std::int64_t cap);

/// Bits arriving at one station in one slot.
double draw_arrivals(RandomStream& rng, const TrafficParams& tp, double slot_len);

/// Rate for one station over one epoch.
double draw_rate(RandomStream& rng, const RateModel& rm);

/// Bits a station can move in one session at `rate_bps` (uplink share).
double service_bits_per_session(double rate_bps, const EnergyParams& ep);

}  // namespace twt
