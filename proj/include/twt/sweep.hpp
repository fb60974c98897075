#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twt/config.hpp"
#include "twt/sim.hpp"

namespace twt {

/// One CSV row: the grid point plus its metrics, or the error that stopped it.
struct SweepRow {
  std::string sweep_id;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::kJtwsa;
  double t_s = 0.0;
  double v = 0.0;
  double lambda = 0.0;
  std::optional<RunMetrics> metrics;
  TheoremConstants constants;
  std::size_t lemma1_violations = 0;  // not part of the CSV
  std::string error;
};

/// Exact column order of the sweep CSV.
inline constexpr const char* kCsvHeader =
    "sweep_id,seed,algorithm,T_s,V,lambda_files_per_s,avg_energy_J_per_epoch,"
    "avg_queue_slotwise_bits,avg_queue_epoch_sampled_bits,stable,queue_slope_bits_per_slot,"
    "b1,b2,e_max,error";

/// Stable identifier of a sweep: FNV-1a over its serialized config.
std::string sweep_id(const SweepSpec& spec);

/// The SimConfig for one grid point.
SimConfig point_config(const SimConfig& base, double lambda, double v, double t_s,
                       Algorithm algorithm, std::uint64_t seed);

/// Runs every grid point. `parallel` worker threads (0 = run inline); rows
/// come back in grid order regardless.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned parallel = 0);

/// Runs a single config and wraps it as a row.
SweepRow run_point(const SimConfig& cfg, const std::string& id);

std::string csv_row(const SweepRow& row);
std::string to_csv(const std::vector<SweepRow>& rows);

}  // namespace twt
