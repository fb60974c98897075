#include "doctest.h"
#include "twt/model.hpp"
#include "twt/random.hpp"

using namespace twt;

namespace {

EnergyParams table1_energy() {
  EnergyParams ep;
  ep.p_down = 3.0;  // irrelevant with frac_down = 0
  ep.p_up = 1.0;
  ep.p_sleep = 0.15;
  ep.t_up_session = 1e-3;
  ep.frac_down = 0.0;
  ep.frac_up = 1.0;
  return ep;
}

}  // namespace

TEST_CASE("session_energy") {
  CHECK(session_energy(table1_energy()) == doctest::Approx(0.001).epsilon(1e-15));

  EnergyParams zero = table1_energy();
  zero.p_down = zero.p_up = 0.0;
  CHECK(session_energy(zero) == 0.0);

  EnergyParams mixed{2.0, 1.0, 0.0, 2e-3, 0.5, 0.5};
  CHECK(session_energy(mixed) == doctest::Approx(0.003).epsilon(1e-15));
}

TEST_CASE("sleep_energy") {
  const auto ep = table1_energy();
  CHECK(sleep_energy(ep, 1e-3) == doctest::Approx(1.5e-4).epsilon(1e-15));
  CHECK(sleep_energy(ep, 2e-3) == doctest::Approx(3.0e-4).epsilon(1e-15));
  EnergyParams off = ep;
  off.p_sleep = 0.0;
  CHECK(sleep_energy(off, 1e-3) == 0.0);
}

TEST_CASE("sessions_per_epoch") {
  CHECK(sessions_per_epoch(1.0, 0.05) == 20);
  CHECK(sessions_per_epoch(1.0, 0.45) == 2);
  CHECK(sessions_per_epoch(1.0, 1.0) == 1);
  CHECK(sessions_per_epoch(0.3, 0.1) == 3);  // 0.3 / 0.1 < 3 in binary
  CHECK(sessions_per_epoch(std::int64_t{1000}, std::int64_t{450}) == 2);
  CHECK_THROWS_AS(sessions_per_epoch(1.0, 1.5), ModelError);
  CHECK_THROWS_AS(sessions_per_epoch(1.0, 0.0), ModelError);
  CHECK_THROWS_AS(sessions_per_epoch(1.0, -0.1), ModelError);
  CHECK_THROWS_AS(sessions_per_epoch(std::int64_t{10}, std::int64_t{11}), ModelError);
}

TEST_CASE("epoch_energy") {
  CHECK(epoch_energy(20, 1e-3, 1.5e-4, 1000) == doctest::Approx(0.167).epsilon(1e-14));
  CHECK(epoch_energy(0, 1e-3, 1.5e-4, 1000) == doctest::Approx(1000 * 1.5e-4).epsilon(1e-15));
  CHECK(epoch_energy(1000, 1e-3, 123.0, 1000) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(epoch_energy(1001, 1e-3, 1.5e-4, 1000), ModelError);
  CHECK_THROWS_AS(epoch_energy(-1, 1e-3, 1.5e-4, 1000), ModelError);
}

TEST_CASE("queue_update") {
  CHECK(queue_update({5}, 10, 3).backlog_bits == 3);
  CHECK(queue_update({100}, 30, 10).backlog_bits == 80);
  CHECK(queue_update({0}, 0, 0).backlog_bits == 0);
}

TEST_CASE("validation") {
  CHECK_NOTHROW(validate(table1_energy()));
  auto bad = table1_energy();
  bad.frac_down = 0.6;
  bad.frac_up = 0.6;
  CHECK_THROWS_AS(validate(bad), ModelError);
  bad = table1_energy();
  bad.p_sleep = -1;
  CHECK_THROWS_AS(validate(bad), ModelError);
  bad = table1_energy();
  bad.t_up_session = 0;
  CHECK_THROWS_AS(validate(bad), ModelError);

  EpochTiming t{0.001, 1000, {50, 100}};
  CHECK_NOTHROW(validate(t));
  t.interval_slots = {100, 50};
  CHECK_THROWS_AS(validate(t), ModelError);
  t.interval_slots = {50, 2000};
  CHECK_THROWS_AS(validate(t), ModelError);
  t.interval_slots = {};
  CHECK_THROWS_AS(validate(t), ModelError);
}

TEST_CASE("model properties") {
  RandomStream rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const double q = rng.uniform(0, 1e6);
    const double r = rng.uniform(0, 1e6);
    const double a = rng.uniform(0, 1e6);
    const double next = queue_update({q}, r, a).backlog_bits;
    CHECK(next >= a);
    CHECK(next >= q - r);
    CHECK(next >= 0.0);

    const double e_sleep = rng.uniform(0, 1e-3);
    const double e_s = e_sleep + rng.uniform(0, 1e-3);
    const auto slots = static_cast<std::int64_t>(1 + rng.uniform_index(2000));
    const auto n = static_cast<std::int64_t>(rng.uniform_index(static_cast<std::uint64_t>(slots)));
    CHECK(epoch_energy(n + 1, e_s, e_sleep, slots) >= epoch_energy(n, e_s, e_sleep, slots));

    EnergyParams ep{rng.uniform(0, 3), rng.uniform(0, 3), rng.uniform(0, 1), 1e-3, 0.25, 0.5};
    const double c = rng.uniform(0.1, 10);
    EnergyParams scaled = ep;
    scaled.p_down *= c;
    scaled.p_up *= c;
    scaled.p_sleep *= c;
    CHECK(session_energy(scaled) == doctest::Approx(c * session_energy(ep)).epsilon(1e-12));
    CHECK(sleep_energy(scaled, 1e-3) == doctest::Approx(c * sleep_energy(ep, 1e-3)).epsilon(1e-12));
  }

  // nonincreasing over the ordered interval set
  std::int64_t prev = sessions_per_epoch(std::int64_t{1000}, std::int64_t{50});
  for (std::int64_t ms = 100; ms <= 450; ms += 50) {
    const auto n = sessions_per_epoch(std::int64_t{1000}, ms);
    CHECK(n <= prev);
    CHECK(n >= 1);
    prev = n;
  }
}
