#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "twt/scheduler.hpp"

namespace twt {

/// One per-epoch assignment problem with weights already evaluated.
struct AssignmentInstance {
  std::vector<double> weights;               // one per station
  std::vector<std::int64_t> session_counts;  // N_l per interval, nonincreasing
  std::int64_t k_capacity = 1;
};

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sum over stations of sessions * weight; SLEEP contributes nothing.
/// Throws OracleError on an infeasible assignment.
double objective_value(const AssignmentInstance& instance, const EpochAssignment& assignment);

struct OracleResult {
  EpochAssignment assignment;
  double value = 0.0;
};

/// Enumeration limits: more than this many stations, or more than
/// kMaxEnumeration station->{intervals, SLEEP} maps, is refused.
inline constexpr std::size_t kMaxOracleStations = 12;
inline constexpr double kMaxEnumeration = 1e7;

/// Exhaustive maximum over every capacity-feasible map.
OracleResult brute_force_assign(const AssignmentInstance& instance);

struct OracleCheckOptions {
  std::size_t trials = 200;
  std::size_t max_m = 8;
  std::size_t max_l = 3;
  std::int64_t max_k = 2;
  std::uint64_t seed = 1;
  FillOrder fill_order = FillOrder::kDescendingWeight;  // kAscendingWeight = mutant
};

struct OracleCheckReport {
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::vector<std::string> counterexamples;

  bool ok() const { return passed == trials; }
  std::string to_text() const;
};

/// Random small instances, JTWSA objective vs. the exhaustive maximum.
OracleCheckReport oracle_check(const OracleCheckOptions& opts);

}  // namespace twt
