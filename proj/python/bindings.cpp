#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "twt/config.hpp"
#include "twt/oracle.hpp"
#include "twt/sim.hpp"
#include "twt/sweep.hpp"

namespace py = pybind11;
using namespace twt;

namespace {

// Assignments cross the boundary as a list: interval index, or None for SLEEP.
using PyAssignment = std::vector<std::optional<std::size_t>>;

PyAssignment to_py(const EpochAssignment& a) {
  PyAssignment out(a.size());
  for (std::size_t m = 0; m < a.size(); ++m) out[m] = a.at(m);
  return out;
}

EpochAssignment from_py(const PyAssignment& a) {
  EpochAssignment out(a.size());
  for (std::size_t m = 0; m < a.size(); ++m)
    if (a[m]) out.assign(m, *a[m]);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "TWT joint interval assignment and scheduling simulator";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<OracleError>(m, "OracleError", PyExc_RuntimeError);

  py::enum_<Algorithm>(m, "Algorithm")
      .value("JTWSA", Algorithm::kJtwsa)
      .value("RANDOM", Algorithm::kRandom);
  py::enum_<SleepSemantics>(m, "SleepSemantics")
      .value("FULL_SLEEP", SleepSemantics::kFullSleep)
      .value("SINGLE_SESSION", SleepSemantics::kSingleSession);

  py::class_<EnergyParams>(m, "EnergyParams")
      .def(py::init<>())
      .def_readwrite("p_down", &EnergyParams::p_down)
      .def_readwrite("p_up", &EnergyParams::p_up)
      .def_readwrite("p_sleep", &EnergyParams::p_sleep)
      .def_readwrite("t_up_session", &EnergyParams::t_up_session)
      .def_readwrite("frac_down", &EnergyParams::frac_down)
      .def_readwrite("frac_up", &EnergyParams::frac_up);

  py::class_<EpochTiming>(m, "EpochTiming")
      .def(py::init<>())
      .def(py::init([](double slot_len, std::int64_t slots, std::vector<std::int64_t> intervals) {
             EpochTiming t{slot_len, slots, std::move(intervals)};
             validate(t);
             return t;
           }),
           py::arg("slot_len"), py::arg("slots_per_epoch"), py::arg("interval_slots"))
      .def_readwrite("slot_len", &EpochTiming::slot_len)
      .def_readwrite("slots_per_epoch", &EpochTiming::slots_per_epoch)
      .def_readwrite("interval_slots", &EpochTiming::interval_slots)
      .def_property_readonly("epoch_len", &EpochTiming::epoch_len);

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("num_stations", &SimConfig::num_stations)
      .def_readwrite("timing", &SimConfig::timing)
      .def_readwrite("energy", &SimConfig::energy)
      .def_readwrite("v", &SimConfig::v)
      .def_readwrite("k_capacity", &SimConfig::k_capacity)
      .def_readwrite("algorithm", &SimConfig::algorithm)
      .def_readwrite("num_epochs", &SimConfig::num_epochs)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("sleep_semantics", &SimConfig::sleep_semantics)
      .def_property(
          "lambda_files_per_s", [](const SimConfig& c) { return c.traffic.lambda_files_per_s; },
          [](SimConfig& c, double l) { c.traffic.lambda_files_per_s = l; })
      .def_property(
          "rates_bps", [](const SimConfig& c) { return c.rates.rate_set_bps; },
          [](SimConfig& c, std::vector<double> r) { c.rates.rate_set_bps = std::move(r); })
      .def_property_readonly("e_s", &SimConfig::e_s)
      .def_property_readonly("e_sleep", &SimConfig::e_sleep)
      .def("with_epoch_length", &with_epoch_length, py::arg("epoch_len_s"));

  py::class_<SweepSpec>(m, "SweepSpec")
      .def(py::init<>())
      .def_readwrite("base", &SweepSpec::base)
      .def_readwrite("lambda_grid", &SweepSpec::lambda_grid)
      .def_readwrite("v_grid", &SweepSpec::v_grid)
      .def_readwrite("t_grid", &SweepSpec::t_grid)
      .def_readwrite("algorithms", &SweepSpec::algorithms)
      .def_readwrite("seeds", &SweepSpec::seeds)
      .def_property_readonly("num_points", &SweepSpec::num_points);

  py::class_<RunMetrics>(m, "RunMetrics")
      .def_readonly("avg_energy_per_epoch", &RunMetrics::avg_energy_per_epoch)
      .def_readonly("avg_queue_slotwise", &RunMetrics::avg_queue_slotwise)
      .def_readonly("avg_queue_epoch_sampled", &RunMetrics::avg_queue_epoch_sampled)
      .def_readonly("stable", &RunMetrics::stable)
      .def_readonly("queue_slope", &RunMetrics::queue_slope);

  py::class_<TheoremConstants>(m, "TheoremConstants")
      .def_readonly("b1", &TheoremConstants::b1)
      .def_readonly("b2", &TheoremConstants::b2)
      .def_readonly("e_max", &TheoremConstants::e_max);

  py::class_<SimResult>(m, "SimResult")
      .def_readonly("metrics", &SimResult::metrics)
      .def_readonly("lemma1_violations", &SimResult::lemma1_violations)
      .def_readonly("slot_queue_series", &SimResult::slot_queue_series)
      .def_property_readonly("num_epochs", [](const SimResult& r) { return r.epochs.size(); })
      .def_property_readonly("epoch_energy", [](const SimResult& r) {
        std::vector<double> out;
        for (const auto& e : r.epochs) out.push_back(e.total_energy());
        return out;
      });

  // model
  m.def("session_energy", [](const EnergyParams& ep) { return session_energy(ep); },
        py::arg("energy") = EnergyParams{});
  m.def("sleep_energy", &sleep_energy, py::arg("energy"), py::arg("slot_len"));
  m.def("sessions_per_epoch", py::overload_cast<double, double>(&sessions_per_epoch),
        py::arg("epoch_len"), py::arg("interval"));
  m.def("epoch_energy", &epoch_energy, py::arg("n_sessions"), py::arg("e_s"), py::arg("e_sleep"),
        py::arg("slots_per_epoch"));
  m.def("queue_update",
        [](double q, double served, double arrived) {
          return queue_update({q}, served, arrived).backlog_bits;
        },
        py::arg("backlog_bits"), py::arg("served_bits"), py::arg("arrived_bits"));

  // scheduler
  m.def("sta_weight",
        [](double backlog, double bits_per_session, double v, double wake_cost) {
          return sta_weight({0, backlog, bits_per_session}, {v, 1, wake_cost});
        },
        py::arg("backlog_bits"), py::arg("bits_per_session"), py::arg("v"), py::arg("wake_cost"));
  m.def("jtwsa_assign",
        [](const std::vector<double>& backlog, const std::vector<double>& bits_per_session,
           const EpochTiming& timing, double v, std::int64_t k, double wake_cost) {
          if (backlog.size() != bits_per_session.size())
            throw py::value_error("backlog and bits_per_session differ in length");
          std::vector<StationSnapshot> snaps(backlog.size());
          for (std::size_t i = 0; i < snaps.size(); ++i)
            snaps[i] = {i, backlog[i], bits_per_session[i]};
          return to_py(jtwsa_assign(snaps, timing, {v, k, wake_cost}));
        },
        py::arg("backlog_bits"), py::arg("bits_per_session"), py::arg("timing"), py::arg("v"),
        py::arg("k_capacity"), py::arg("wake_cost"),
        "Interval index per station, None for SLEEP.");
  m.def("assign_by_weight",
        [](const std::vector<double>& w, std::size_t l, std::int64_t k) {
          return to_py(assign_by_weight(w, l, k));
        },
        py::arg("weights"), py::arg("num_intervals"), py::arg("k_capacity"));
  m.def("random_assign",
        [](std::uint64_t seed, std::size_t num_stations, const EpochTiming& timing, std::int64_t k) {
          RandomStream rng(seed, 0, StreamTag::kBenchmark);
          return to_py(random_assign(rng, num_stations, timing, k));
        },
        py::arg("seed"), py::arg("num_stations"), py::arg("timing"), py::arg("k_capacity"));

  // oracle
  m.def("objective_value",
        [](const std::vector<double>& w, const std::vector<std::int64_t>& n, std::int64_t k,
           const PyAssignment& a) { return objective_value({w, n, k}, from_py(a)); },
        py::arg("weights"), py::arg("session_counts"), py::arg("k_capacity"), py::arg("assignment"));
  m.def("brute_force_assign",
        [](const std::vector<double>& w, const std::vector<std::int64_t>& n, std::int64_t k) {
          const auto r = brute_force_assign({w, n, k});
          return py::make_tuple(to_py(r.assignment), r.value);
        },
        py::arg("weights"), py::arg("session_counts"), py::arg("k_capacity"),
        "Returns (assignment, objective value).");
  m.def("oracle_check",
        [](std::size_t trials, std::size_t max_m, std::size_t max_l, std::int64_t max_k,
           std::uint64_t seed) {
          OracleCheckOptions o;
          o.trials = trials;
          o.max_m = max_m;
          o.max_l = max_l;
          o.max_k = max_k;
          o.seed = seed;
          const auto r = oracle_check(o);
          return py::make_tuple(r.passed, r.trials, r.counterexamples);
        },
        py::arg("trials") = 200, py::arg("max_m") = 8, py::arg("max_l") = 3, py::arg("max_k") = 2,
        py::arg("seed") = 1, "Returns (passed, trials, counterexamples).");

  // config
  m.def("parse_config_text", &parse_config_text, py::arg("text"));
  m.def("parse_config", [](const std::string& path) { return parse_config(path); }, py::arg("path"));
  m.def("serialize_config", &serialize_config, py::arg("spec"));

  // simulation
  m.def("run_simulation",
        [](const SimConfig& cfg, bool stop_on_lemma1_violation) {
          RunOptions o;
          o.stop_on_lemma1_violation = stop_on_lemma1_violation;
          py::gil_scoped_release release;
          return run_simulation(cfg, o);
        },
        py::arg("config"), py::arg("stop_on_lemma1_violation") = false);
  m.def("theorem_constants", py::overload_cast<const SimConfig&>(&theorem_constants),
        py::arg("config"));
  m.def("queue_bound", &queue_bound, py::arg("constants"), py::arg("v"), py::arg("epsilon"));
  m.def("stability_check",
        [](const std::vector<double>& series, double threshold, double window) {
          const auto r = stability_check(series, threshold, window);
          return py::make_tuple(r.stable, r.slope);
        },
        py::arg("series"), py::arg("threshold"), py::arg("window") = 0.5,
        "Returns (stable, slope in bits per slot).");
  m.def("run_sweep",
        [](const SweepSpec& spec, unsigned parallel) {
          std::vector<SweepRow> rows;
          {
            py::gil_scoped_release release;
            rows = run_sweep(spec, parallel);
          }
          return to_csv(rows);
        },
        py::arg("spec"), py::arg("parallel") = 0, "Runs the grid and returns the CSV text.");
}
