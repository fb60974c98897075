#include "twt/scheduler.hpp"

#include <algorithm>
#include <numeric>

namespace twt {

std::int64_t EpochAssignment::load(std::size_t l) const {
  return std::count_if(interval_.begin(), interval_.end(),
                       [l](const auto& slot) { return slot && *slot == l; });
}

bool EpochAssignment::feasible(std::size_t num_intervals, std::int64_t k_capacity) const {
  std::vector<std::int64_t> counts(num_intervals, 0);
  for (const auto& slot : interval_) {
    if (!slot) continue;
    if (*slot >= num_intervals) return false;
    if (++counts[*slot] > k_capacity) return false;
  }
  return true;
}

std::optional<std::int64_t> EpochAssignment::period_slots(std::size_t station,
                                                          const EpochTiming& timing,
                                                          SleepSemantics sleep) const {
  const auto& slot = interval_.at(station);
  if (slot) return timing.interval_slots.at(*slot);
  if (sleep == SleepSemantics::kSingleSession) return timing.slots_per_epoch;
  return std::nullopt;
}

std::int64_t EpochAssignment::n_sessions(std::size_t station, const EpochTiming& timing,
                                         SleepSemantics sleep) const {
  const auto period = period_slots(station, timing, sleep);
  return period ? sessions_per_epoch(timing.slots_per_epoch, *period) : 0;
}

double sta_weight(const StationSnapshot& s, const SchedulerParams& p) {
  return s.backlog_bits * s.bits_per_session - p.v * p.wake_cost;
}

EpochAssignment assign_by_weight(std::span<const double> weights, std::size_t num_intervals,
                                 std::int64_t k_capacity, FillOrder order) {
  EpochAssignment out(weights.size());
  std::vector<std::size_t> rank(weights.size());
  std::iota(rank.begin(), rank.end(), std::size_t{0});
  std::stable_sort(rank.begin(), rank.end(),
                   [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });

  const auto seats = std::min(rank.size(), num_intervals * static_cast<std::size_t>(k_capacity));
  rank.resize(seats);
  std::erase_if(rank, [&](std::size_t m) { return !(weights[m] > 0.0); });
  if (order == FillOrder::kAscendingWeight) std::reverse(rank.begin(), rank.end());

  for (std::size_t i = 0; i < rank.size(); ++i)
    out.assign(rank[i], i / static_cast<std::size_t>(k_capacity));
  return out;
}

EpochAssignment jtwsa_assign(std::span<const StationSnapshot> stations, const EpochTiming& timing,
                             const SchedulerParams& p, FillOrder order) {
  // rank by station_id on ties, independent of input order
  std::vector<std::size_t> by_id(stations.size());
  std::iota(by_id.begin(), by_id.end(), std::size_t{0});
  std::stable_sort(by_id.begin(), by_id.end(), [&](std::size_t a, std::size_t b) {
    return stations[a].station_id < stations[b].station_id;
  });

  std::vector<double> weights(stations.size());
  for (std::size_t i = 0; i < by_id.size(); ++i) weights[i] = sta_weight(stations[by_id[i]], p);

  const auto sorted = assign_by_weight(weights, timing.num_intervals(), p.k_capacity, order);
  EpochAssignment out(stations.size());
  for (std::size_t i = 0; i < by_id.size(); ++i)
    if (const auto& l = sorted.at(i)) out.assign(by_id[i], *l);
  return out;
}

EpochAssignment random_assign(RandomStream& rng, std::size_t num_stations,
                              const EpochTiming& timing, std::int64_t k_capacity) {
  auto shuffle = [&rng](auto& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.uniform_index(i)]);
  };

  std::vector<std::size_t> stations(num_stations);
  std::iota(stations.begin(), stations.end(), std::size_t{0});
  shuffle(stations);

  std::vector<std::size_t> seats;
  seats.reserve(timing.num_intervals() * static_cast<std::size_t>(k_capacity));
  for (std::size_t l = 0; l < timing.num_intervals(); ++l)
    for (std::int64_t k = 0; k < k_capacity; ++k) seats.push_back(l);
  shuffle(seats);

  EpochAssignment out(num_stations);
  const auto chosen = std::min(num_stations, seats.size());
  for (std::size_t i = 0; i < chosen; ++i) out.assign(stations[i], seats[i]);
  return out;
}

}  // namespace twt
