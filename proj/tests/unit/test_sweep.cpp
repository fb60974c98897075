#include <sstream>

#include "doctest.h"
#include "twt/sweep.hpp"

using namespace twt;

namespace {

SweepSpec short_spec(std::int64_t epochs) {
  SweepSpec s;
  s.base.num_epochs = epochs;
  return s;
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("one-point sweep matches run_simulation") {
  SweepSpec s = short_spec(5);
  s.lambda_grid = {0.5};
  s.v_grid = {1000};
  s.algorithms = {Algorithm::kJtwsa};
  const auto rows = run_sweep(s);
  REQUIRE(rows.size() == 1);
  REQUIRE(rows[0].metrics);
  CHECK(rows[0].error.empty());

  SimConfig c = s.base;
  c.traffic.lambda_files_per_s = 0.5;
  const auto direct = run_simulation(c);
  CHECK(rows[0].metrics->avg_energy_per_epoch == direct.metrics.avg_energy_per_epoch);
  CHECK(rows[0].metrics->avg_queue_slotwise == direct.metrics.avg_queue_slotwise);
  CHECK(rows[0].metrics->avg_queue_epoch_sampled == direct.metrics.avg_queue_epoch_sampled);
  CHECK(rows[0].constants.b1 == theorem_constants(c).b1);
}

TEST_CASE("baseline grid has 40 rows in grid order") {
  const auto spec = short_spec(2);
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 40);
  std::size_t i = 0;
  for (double lambda : spec.lambda_grid)
    for (double v : spec.v_grid)
      for (Algorithm alg : spec.algorithms) {
        CHECK(rows[i].lambda == lambda);
        CHECK(rows[i].v == v);
        CHECK(rows[i].algorithm == alg);
        CHECK(rows[i].t_s == 1.0);
        ++i;
      }
  const auto csv = to_csv(rows);
  CHECK(count_lines(csv) == 41);
  CHECK(csv.rfind(kCsvHeader, 0) == 0);
  CHECK(csv.find("nan") == std::string::npos);
}

TEST_CASE("sweep CSV is byte-identical across runs and worker counts") {
  const auto spec = short_spec(3);
  const auto a = to_csv(run_sweep(spec));
  CHECK(a == to_csv(run_sweep(spec)));
  CHECK(a == to_csv(run_sweep(spec, 3)));
}

TEST_CASE("invalid grid points become error rows") {
  SweepSpec s = short_spec(2);
  s.lambda_grid = {0.5};
  s.v_grid = {1000};
  s.algorithms = {Algorithm::kJtwsa};
  s.t_grid = {1.0, 0.3, 1.0005};  // 0.3 s is shorter than the 450 ms interval
  const auto rows = run_sweep(s);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].error.empty());
  CHECK_FALSE(rows[1].error.empty());
  CHECK_FALSE(rows[1].metrics);
  CHECK_FALSE(rows[2].error.empty());
  const auto line = csv_row(rows[2]);
  CHECK(std::count(line.begin(), line.end(), ',') >= 14);
}

TEST_CASE("CSV row layout") {
  SweepRow r;
  r.sweep_id = "abc";
  r.seed = 7;
  r.algorithm = Algorithm::kRandom;
  r.t_s = 2;
  r.v = 5000;
  r.lambda = 0.5;
  r.metrics = RunMetrics{1.5, 2.5, 3.5, false, 0.25};
  r.constants = {1, 2, 3};
  CHECK(csv_row(r) == "abc,7,random,2,5000,0.5,1.5,2.5,3.5,false,0.25,1,2,3,");
  r.metrics.reset();
  r.error = "bad, worse";
  CHECK(csv_row(r) == "abc,7,random,2,5000,0.5,,,,,,,,,\"bad, worse\"");
}
