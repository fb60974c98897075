#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "enumerate.hpp"
#include "twt/oracle.hpp"
#include "twt/scheduler.hpp"

using namespace twt;

namespace {

// Snapshots whose weight equals `w` under V = 1, wake_cost = 1, R = 1.
std::vector<StationSnapshot> snapshots_for(const std::vector<double>& w) {
  std::vector<StationSnapshot> out;
  for (std::size_t i = 0; i < w.size(); ++i) out.push_back({i, w[i] + 1.0, 1.0});
  return out;
}

const SchedulerParams kUnit{1.0, 1, 1.0};

EpochTiming timing_with(std::vector<std::int64_t> intervals, std::int64_t slots) {
  return EpochTiming{0.001, slots, std::move(intervals)};
}

std::vector<std::int64_t> session_counts(const EpochTiming& t) {
  std::vector<std::int64_t> n;
  for (auto s : t.interval_slots) n.push_back(sessions_per_epoch(t.slots_per_epoch, s));
  return n;
}

double objective(const std::vector<double>& w, const EpochTiming& t, const EpochAssignment& a) {
  double v = 0.0;
  for (std::size_t m = 0; m < w.size(); ++m) v += static_cast<double>(a.n_sessions(m, t)) * w[m];
  return v;
}

}  // namespace

TEST_CASE("sta_weight") {
  const SchedulerParams p{1000.0, 5, 8.5e-4};
  CHECK(sta_weight({0, 0.0, 200000.0}, p) == doctest::Approx(-0.85));
  CHECK(sta_weight({0, 200000.0, 200000.0}, p) == 4e10 - 1000.0 * 8.5e-4);
  const SchedulerParams no_penalty{0.0, 5, 8.5e-4};
  CHECK(sta_weight({0, 300.0, 7.0}, no_penalty) == 2100.0);
}

TEST_CASE("jtwsa_assign hand instances") {
  SUBCASE("weights 5, 3, -1 with L=2, K=1") {
    const std::vector<double> w{5, 3, -1};
    const auto t = timing_with({1, 2}, 4);
    const auto a = jtwsa_assign(snapshots_for(w), t, kUnit);
    CHECK(a.at(0) == std::optional<std::size_t>{0});
    CHECK(a.at(1) == std::optional<std::size_t>{1});
    CHECK(a.asleep(2));
    const auto e = testing::enumerate_all(w, session_counts(t), 1);
    CHECK(objective(w, t, a) == doctest::Approx(e.best));
    CHECK(e.best == doctest::Approx(5 * 4 + 3 * 2));
  }
  SUBCASE("all weights nonpositive") {
    const auto a = jtwsa_assign(snapshots_for({-1, 0, -3}), timing_with({1, 2}, 4),
                                SchedulerParams{1.0, 2, 1.0});
    for (std::size_t m = 0; m < 3; ++m) CHECK(a.asleep(m));
  }
  SUBCASE("weights 5, 4, 3 with L=1, K=2") {
    const std::vector<double> w{5, 4, 3};
    const auto t = timing_with({2}, 4);
    const auto a = jtwsa_assign(snapshots_for(w), t, SchedulerParams{1.0, 2, 1.0});
    CHECK(a.at(0) == std::optional<std::size_t>{0});
    CHECK(a.at(1) == std::optional<std::size_t>{0});
    CHECK(a.asleep(2));
    CHECK(objective(w, t, a) == doctest::Approx(testing::enumerate_all(w, session_counts(t), 2).best));
  }
  SUBCASE("ties go to the lower station id") {
    const auto a = jtwsa_assign(snapshots_for({2, 2, 2}), timing_with({1}, 4), kUnit);
    CHECK(a.at(0) == std::optional<std::size_t>{0});
    CHECK(a.asleep(1));
    CHECK(a.asleep(2));
  }
}

TEST_CASE("jtwsa_assign properties") {
  RandomStream rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    const auto m = 1 + rng.uniform_index(20);
    const auto l = 1 + rng.uniform_index(5);
    const auto k = 1 + static_cast<std::int64_t>(rng.uniform_index(4));
    std::vector<std::int64_t> intervals;
    for (std::size_t i = 1; i <= l; ++i) intervals.push_back(static_cast<std::int64_t>(i * 3));
    const auto t = timing_with(intervals, 60);

    std::vector<StationSnapshot> snaps;
    for (std::size_t i = 0; i < m; ++i)
      snaps.push_back({i, rng.uniform(0, 1000), rng.uniform(0, 10)});
    const SchedulerParams p{rng.uniform(0, 5000), k, 0.5};
    const auto a = jtwsa_assign(snaps, t, p);

    // capacity
    CHECK(a.feasible(l, k));
    for (std::size_t i = 0; i < l; ++i) CHECK(a.load(i) <= k);

    // threshold consistency: awake iff weight > 0 and ranked within L*K
    std::vector<double> w;
    for (const auto& s : snaps) w.push_back(sta_weight(s, p));
    for (std::size_t i = 0; i < m; ++i) {
      const auto better = std::count_if(w.begin(), w.end(), [&](double x) { return x > w[i]; });
      const bool in_top = static_cast<std::size_t>(better) < l * static_cast<std::size_t>(k);
      CHECK(a.asleep(i) == !(w[i] > 0.0 && in_top));
    }

    // scaling backlogs and V by a power of two leaves the decision alone
    auto scaled_snaps = snaps;
    for (auto& s : scaled_snaps) s.backlog_bits *= 8.0;
    SchedulerParams scaled_p = p;
    scaled_p.v *= 8.0;
    CHECK(jtwsa_assign(scaled_snaps, t, scaled_p) == a);

    // permuting input order permutes the output
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = m; i > 1; --i) std::swap(perm[i - 1], perm[rng.uniform_index(i)]);
    std::vector<StationSnapshot> shuffled;
    for (auto idx : perm) shuffled.push_back(snaps[idx]);
    const auto b = jtwsa_assign(shuffled, t, p);
    for (std::size_t i = 0; i < m; ++i) CHECK(b.at(i) == a.at(perm[i]));
  }
}

TEST_CASE("jtwsa_assign fills the shortest interval with the heaviest stations") {
  const std::vector<double> w{1, 9, 4, 7, 3, 8};
  const auto a = jtwsa_assign(snapshots_for(w), timing_with({1, 2, 3}, 6), SchedulerParams{1.0, 2, 1.0});
  CHECK(a.at(1) == std::optional<std::size_t>{0});
  CHECK(a.at(5) == std::optional<std::size_t>{0});
  CHECK(a.at(3) == std::optional<std::size_t>{1});
  CHECK(a.at(2) == std::optional<std::size_t>{1});
  CHECK(a.at(4) == std::optional<std::size_t>{2});
  CHECK(a.at(0) == std::optional<std::size_t>{2});
}

TEST_CASE("random_assign") {
  SUBCASE("M=2, L=2, K=1 assigns both, one per interval") {
    RandomStream rng(1);
    const auto t = timing_with({1, 2}, 4);
    bool saw_swap = false, saw_identity = false;
    for (int i = 0; i < 100; ++i) {
      const auto a = random_assign(rng, 2, t, 1);
      REQUIRE(!a.asleep(0));
      REQUIRE(!a.asleep(1));
      CHECK(*a.at(0) != *a.at(1));
      (*a.at(0) == 0 ? saw_identity : saw_swap) = true;
    }
    CHECK(saw_swap);
    CHECK(saw_identity);
  }
  SUBCASE("M=50, L=9, K=5 assigns exactly 45") {
    RandomStream rng(2);
    EpochTiming t{0.001, 1000, {50, 100, 150, 200, 250, 300, 350, 400, 450}};
    for (int i = 0; i < 50; ++i) {
      const auto a = random_assign(rng, 50, t, 5);
      std::size_t awake = 0;
      for (std::size_t m = 0; m < 50; ++m) awake += a.asleep(m) ? 0 : 1;
      CHECK(awake == 45);
      for (std::size_t l = 0; l < 9; ++l) CHECK(a.load(l) == 5);
    }
  }
  SUBCASE("fewer stations than seats stays within capacity") {
    RandomStream rng(3);
    const auto t = timing_with({1, 2, 3}, 6);
    for (int i = 0; i < 200; ++i) {
      const auto a = random_assign(rng, 4, t, 2);
      CHECK(a.feasible(3, 2));
      for (std::size_t m = 0; m < 4; ++m) CHECK(!a.asleep(m));
    }
  }
  SUBCASE("seeded fixture") {
    RandomStream a(42, 0, StreamTag::kBenchmark);
    RandomStream b(42, 0, StreamTag::kBenchmark);
    const auto t = timing_with({1, 2}, 4);
    std::vector<int> seq;
    for (int i = 0; i < 4; ++i) {
      const auto x = random_assign(a, 5, t, 2);
      CHECK(x == random_assign(b, 5, t, 2));
      for (std::size_t m = 0; m < 5; ++m) seq.push_back(x.asleep(m) ? -1 : static_cast<int>(*x.at(m)));
    }
    const std::vector<int> expected{1, 0, 0, -1, 1, 0, 0, 1, -1, 1,
                                   0, 1, 0, 1, -1, 0, -1, 1, 1, 0};
    CHECK(seq == expected);
  }
}

TEST_CASE("sleep semantics") {
  const auto t = timing_with({1, 2}, 4);
  EpochAssignment a(2);
  a.assign(0, 1);
  CHECK(a.n_sessions(0, t) == 2);
  CHECK(a.n_sessions(1, t, SleepSemantics::kFullSleep) == 0);
  CHECK(a.n_sessions(1, t, SleepSemantics::kSingleSession) == 1);
  CHECK(a.period_slots(1, t, SleepSemantics::kSingleSession) == std::optional<std::int64_t>{4});
}
