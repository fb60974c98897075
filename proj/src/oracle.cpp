#include "twt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "twt/random.hpp"

namespace twt {

namespace {

struct Search {
  const AssignmentInstance& inst;
  std::vector<std::int64_t> load;
  EpochAssignment current;
  double current_value = 0.0;
  OracleResult best;

  void visit(std::size_t m) {
    if (m == inst.weights.size()) {
      if (current_value > best.value) best = {current, current_value};
      return;
    }
    current.sleep(m);
    visit(m + 1);
    for (std::size_t l = 0; l < inst.session_counts.size(); ++l) {
      if (load[l] == inst.k_capacity) continue;
      const double gain = static_cast<double>(inst.session_counts[l]) * inst.weights[m];
      ++load[l];
      current.assign(m, l);
      current_value += gain;
      visit(m + 1);
      current_value -= gain;
      --load[l];
    }
    current.sleep(m);
  }
};

bool values_match(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

template <typename Seq>
std::string join(const Seq& xs) {
  std::ostringstream os;
  os.precision(17);
  os << '[';
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  os << ']';
  return os.str();
}

}  // namespace

double objective_value(const AssignmentInstance& instance, const EpochAssignment& assignment) {
  if (assignment.size() != instance.weights.size())
    throw OracleError("assignment size does not match the instance");
  if (!assignment.feasible(instance.session_counts.size(), instance.k_capacity))
    throw OracleError("assignment violates interval capacity");
  double total = 0.0;
  for (std::size_t m = 0; m < assignment.size(); ++m)
    if (const auto& l = assignment.at(m))
      total += static_cast<double>(instance.session_counts[*l]) * instance.weights[m];
  return total;
}

OracleResult brute_force_assign(const AssignmentInstance& instance) {
  const auto m = instance.weights.size();
  const double maps = std::pow(static_cast<double>(instance.session_counts.size() + 1),
                               static_cast<double>(m));
  if (m > kMaxOracleStations || maps > kMaxEnumeration)
    throw OracleError("instance too large to enumerate (" + std::to_string(m) + " stations)");
  if (instance.k_capacity < 1) throw OracleError("capacity must be at least 1");

  Search search{instance, std::vector<std::int64_t>(instance.session_counts.size(), 0),
                EpochAssignment(m), 0.0, {EpochAssignment(m), 0.0}};
  search.visit(0);
  return search.best;
}

std::string OracleCheckReport::to_text() const {
  std::ostringstream os;
  os << "oracle-check: " << passed << "/" << trials << " instances matched\n";
  for (const auto& c : counterexamples) os << "counterexample: " << c << "\n";
  return os.str();
}

OracleCheckReport oracle_check(const OracleCheckOptions& opts) {
  OracleCheckReport report;
  report.trials = opts.trials;
  RandomStream rng(opts.seed, 0, StreamTag::kOracle);

  // Weights enter through real snapshots: bits_per_session = 1, V = 1 and a
  // wake cost of 10 turn backlog (w + 10) into weight w.
  constexpr double kShift = 10.0;
  for (std::size_t trial = 0; trial < opts.trials; ++trial) {
    const auto m = 1 + rng.uniform_index(opts.max_m);
    const auto l = 1 + rng.uniform_index(opts.max_l);
    const auto k = 1 + static_cast<std::int64_t>(rng.uniform_index(opts.max_k));

    EpochTiming timing;
    timing.slots_per_epoch = 10 + static_cast<std::int64_t>(rng.uniform_index(91));
    std::vector<std::int64_t> pool(timing.slots_per_epoch);
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<std::int64_t>(i) + 1;
    for (std::size_t i = 0; i < l; ++i)
      std::swap(pool[i], pool[i + rng.uniform_index(pool.size() - i)]);
    timing.interval_slots.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(l));
    std::sort(timing.interval_slots.begin(), timing.interval_slots.end());

    AssignmentInstance inst;
    inst.k_capacity = k;
    for (auto slots : timing.interval_slots)
      inst.session_counts.push_back(sessions_per_epoch(timing.slots_per_epoch, slots));

    std::vector<StationSnapshot> snaps;
    for (std::size_t s = 0; s < m; ++s) {
      inst.weights.push_back(rng.uniform(-10.0, 10.0));
      snaps.push_back({s, inst.weights.back() + kShift, 1.0});
    }

    const SchedulerParams params{1.0, k, kShift};
    const auto greedy = jtwsa_assign(snaps, timing, params, opts.fill_order);
    const double greedy_value = objective_value(inst, greedy);
    const auto best = brute_force_assign(inst);

    if (values_match(greedy_value, best.value)) {
      ++report.passed;
    } else {
      std::ostringstream os;
      os.precision(17);
      os << "trial=" << trial << " M=" << m << " L=" << l << " K=" << k
         << " weights=" << join(inst.weights) << " sessions=" << join(inst.session_counts)
         << " jtwsa=" << greedy_value << " oracle=" << best.value;
      report.counterexamples.push_back(os.str());
    }
  }
  return report;
}

}  // namespace twt
