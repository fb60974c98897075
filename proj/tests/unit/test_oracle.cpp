#include "doctest.h"
#include "enumerate.hpp"
#include "twt/oracle.hpp"

using namespace twt;

TEST_CASE("objective_value") {
  AssignmentInstance inst{{9.0}, {20}, 1};
  EpochAssignment sleep_all(1);
  CHECK(objective_value(inst, sleep_all) == 0.0);
  EpochAssignment one(1);
  one.assign(0, 0);
  CHECK(objective_value(inst, one) == 180.0);

  AssignmentInstance two{{3.0, 5.0}, {2, 1}, 1};
  EpochAssignment best(2);
  best.assign(1, 0);
  best.assign(0, 1);
  CHECK(objective_value(two, best) == 13.0);
  const auto e = testing::enumerate_all(two.weights, two.session_counts, 1);
  CHECK(e.feasible == 7);
  CHECK(e.best == 13.0);

  EpochAssignment crowded(2);
  crowded.assign(0, 0);
  crowded.assign(1, 0);
  CHECK_THROWS_AS(objective_value(two, crowded), OracleError);
}

TEST_CASE("brute_force_assign") {
  const auto r = brute_force_assign({{2.0}, {5}, 1});
  CHECK(r.value == 10.0);
  CHECK(r.assignment.at(0) == std::optional<std::size_t>{0});

  const auto neg = brute_force_assign({{-1.0}, {5}, 1});
  CHECK(neg.value == 0.0);
  CHECK(neg.assignment.asleep(0));

  CHECK_THROWS_AS(brute_force_assign({std::vector<double>(13, 1.0), {1}, 1}), OracleError);
  // 4^12 > 1e7
  CHECK_THROWS_AS(brute_force_assign({std::vector<double>(12, 1.0), {3, 2, 1}, 1}), OracleError);
}

TEST_CASE("brute_force_assign agrees with plain enumeration and bounds every assignment") {
  RandomStream rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    AssignmentInstance inst;
    const auto m = 1 + rng.uniform_index(7);
    const auto l = 1 + rng.uniform_index(3);
    inst.k_capacity = 1 + static_cast<std::int64_t>(rng.uniform_index(2));
    std::int64_t n = 30;
    for (std::size_t i = 0; i < l; ++i) {
      inst.session_counts.push_back(n);
      n = std::max<std::int64_t>(1, n - 1 - static_cast<std::int64_t>(rng.uniform_index(10)));
    }
    for (std::size_t i = 0; i < m; ++i) inst.weights.push_back(rng.uniform(-10, 10));

    const auto best = brute_force_assign(inst);
    CHECK(best.value >= 0.0);
    CHECK(best.assignment.feasible(l, inst.k_capacity));
    CHECK(objective_value(inst, best.assignment) == doctest::Approx(best.value));
    CHECK(best.value == doctest::Approx(testing::enumerate_all(inst.weights, inst.session_counts,
                                                               inst.k_capacity).best));

    EpochTiming t{0.001, 1, std::vector<std::int64_t>(l, 1)};
    const auto rnd = random_assign(rng, m, t, inst.k_capacity);
    CHECK(objective_value(inst, rnd) <= best.value + 1e-9);

    // relabelling stations (equal weights included) leaves the optimum unchanged
    if (m >= 2) {
      auto tied = inst;
      tied.weights[1] = tied.weights[0];
      auto relabelled = tied;
      for (std::size_t i = m; i > 1; --i)
        std::swap(relabelled.weights[i - 1], relabelled.weights[rng.uniform_index(i)]);
      CHECK(brute_force_assign(relabelled).value == doctest::Approx(brute_force_assign(tied).value));
    }
  }
}

TEST_CASE("oracle_check") {
  OracleCheckOptions empty;
  empty.trials = 0;
  const auto none = oracle_check(empty);
  CHECK(none.ok());
  CHECK(none.trials == 0);

  const auto report = oracle_check({});
  CHECK(report.trials == 200);
  CHECK(report.passed == 200);
  CHECK(report.counterexamples.empty());

  OracleCheckOptions mutant;
  mutant.fill_order = FillOrder::kAscendingWeight;
  const auto bad = oracle_check(mutant);
  CHECK_FALSE(bad.ok());
  REQUIRE_FALSE(bad.counterexamples.empty());
  CHECK(bad.to_text().find("counterexample: trial=") != std::string::npos);
}
