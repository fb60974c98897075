#include "twt/traffic.hpp"

#include <cmath>
#include <limits>

namespace twt {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t owner, StreamTag tag) {
  // splitmix64 finalizer applied over the three words
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(master);
  h = mix(h ^ owner);
  h = mix(h ^ static_cast<std::uint64_t>(tag));
  return h;
}

std::uint64_t RandomStream::uniform_index(std::uint64_t n) {
  // rejection on the top of the range keeps the draw unbiased
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % n;
}

void validate(const TrafficParams& tp) {
  if (!(tp.file_size_bits > 0.0)) throw ModelError("file size must be positive");
  if (!(tp.lambda_files_per_s >= 0.0)) throw ModelError("arrival rate must be nonnegative");
  if (tp.arrival_cap_files_per_slot < 1) throw ModelError("arrival cap must be at least 1");
}

void validate(const RateModel& rm) {
  if (rm.rate_set_bps.empty()) throw ModelError("rate set is empty");
  double prev = 0.0;
  for (double r : rm.rate_set_bps) {
    if (!(r > prev)) throw ModelError("rate set must be positive and strictly increasing");
    prev = r;
  }
}

std::int64_t truncated_poisson(RandomStream& rng, double mean, std::int64_t cap) {
  if (mean <= 0.0) return 0;
  const double u = rng.uniform01();
  double p = std::exp(-mean);
  double cdf = p;
  std::int64_t k = 0;
  while (u >= cdf && k < cap) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

double draw_arrivals(RandomStream& rng, const TrafficParams& tp, double slot_len) {
  const double mean = tp.lambda_files_per_s * slot_len;
  return static_cast<double>(truncated_poisson(rng, mean, tp.arrival_cap_files_per_slot)) *
         tp.file_size_bits;
}

double draw_rate(RandomStream& rng, const RateModel& rm) {
  if (rm.rate_set_bps.empty()) throw ModelError("rate set is empty");
  return rm.rate_set_bps[rng.uniform_index(rm.rate_set_bps.size())];
}

double service_bits_per_session(double rate_bps, const EnergyParams& ep) {
  return rate_bps * ep.frac_up * ep.t_up_session;
}

}  // namespace twt
