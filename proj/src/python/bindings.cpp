#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "twpa/circuit.hpp"
#include "twpa/classical_cme.hpp"
#include "twpa/cli.hpp"
#include "twpa/correspondence.hpp"
#include "twpa/errors.hpp"
#include "twpa/fockprop.hpp"
#include "twpa/quantum.hpp"

namespace py = pybind11;
using namespace twpa;

namespace {

py::dict sweep_columns(const SweepTable& t) {
  std::vector<double> f, nopm, pm;
  for (const GainRow& r : t.rows) {
    f.push_back(r.frequency_hz);
    nopm.push_back(r.gain_nopm_db);
    pm.push_back(r.gain_pm_db);
  }
  py::dict d;
  d["frequency_hz"] = f;
  d["gain_nopm_db"] = nopm;
  d["gain_pm_db"] = pm;
  return d;
}

py::dict comparison_columns(const ComparisonTable& t) {
  std::vector<double> f, classical, classicalised, delta;
  for (const ComparisonRow& r : t.rows) {
    f.push_back(r.frequency_hz);
    classical.push_back(r.gain_classical_db);
    classicalised.push_back(r.gain_classicalised_db);
    delta.push_back(r.delta_db);
  }
  py::dict d;
  d["frequency_hz"] = f;
  d["gain_classical_db"] = classical;
  d["gain_classicalised_db"] = classicalised;
  d["delta_db"] = delta;
  d["max_abs_delta_db"] = t.max_abs_delta_db;
  d["peak_concentration"] = t.rows.empty() ? 0.0 : peak_concentration(t);
  return d;
}

GainSweepSpec make_spec(const LineParams& line, const std::optional<ResonatorParams>& res, double pump_hz,
                        double pump_ratio, double signal_ratio, double f_min, double f_max, std::size_t points) {
  GainSweepSpec spec;
  spec.line = line;
  spec.resonator = res;
  spec.pump_frequency_hz = pump_hz;
  spec.pump_current_ratio = pump_ratio;
  spec.signal_current_ratio = signal_ratio;
  spec.grid = {f_min, f_max, points};
  return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Josephson travelling-wave parametric amplifier models";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto domain = py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<SingularityError>(m, "SingularityError", domain.ptr());
  py::register_exception<DivergenceError>(m, "DivergenceError", base.ptr());
  py::register_exception<TruncationError>(m, "TruncationError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  py::enum_<Mode>(m, "Mode").value("pump", Mode::pump).value("signal", Mode::signal).value("idler", Mode::idler);

  py::class_<LineParams>(m, "LineParams")
      .def_static("from_inductance", &LineParams::from_inductance, py::arg("cell_length"),
                  py::arg("junction_inductance"), py::arg("junction_capacitance"), py::arg("ground_capacitance"),
                  py::arg("n_cells"))
      .def_static("from_critical_current", &LineParams::from_critical_current, py::arg("cell_length"),
                  py::arg("critical_current"), py::arg("junction_capacitance"), py::arg("ground_capacitance"),
                  py::arg("n_cells"))
      .def_readonly("cell_length", &LineParams::cell_length)
      .def_readonly("junction_inductance", &LineParams::junction_inductance)
      .def_readonly("junction_capacitance", &LineParams::junction_capacitance)
      .def_readonly("ground_capacitance", &LineParams::ground_capacitance)
      .def_readonly("critical_current", &LineParams::critical_current)
      .def_readonly("n_cells", &LineParams::n_cells)
      .def("length", &LineParams::length)
      .def("cutoff", &LineParams::cutoff);

  py::class_<ResonatorParams>(m, "ResonatorParams")
      .def(py::init([](double cc, double lr, double cr) {
             ResonatorParams r{cc, lr, cr};
             r.validate();
             return r;
           }),
           py::arg("coupling_capacitance"), py::arg("inductance"), py::arg("capacitance"))
      .def_readonly("coupling_capacitance", &ResonatorParams::coupling_capacitance)
      .def_readonly("inductance", &ResonatorParams::inductance)
      .def_readonly("capacitance", &ResonatorParams::capacitance)
      .def("resonance", &ResonatorParams::resonance)
      .def("loaded_pole", &ResonatorParams::loaded_pole);

  m.def("lambda_factor", &lambda_factor, py::arg("omega"), py::arg("line"));
  m.def(
      "wavenumber",
      [](double omega, const LineParams& line, const std::optional<ResonatorParams>& res) {
        const Wavenumber k = wavenumber(omega, line, res);
        return py::make_tuple(k.value, k.stop_band);
      },
      py::arg("omega"), py::arg("line"), py::arg("resonator") = std::nullopt,
      "Returns (k, stop_band).");
  m.def("char_impedance", &char_impedance, py::arg("omega"), py::arg("line"), py::arg("resonator") = std::nullopt);

  py::class_<ModeQuantities>(m, "ModeQuantities")
      .def_readonly("omega", &ModeQuantities::omega)
      .def_readonly("lambda_", &ModeQuantities::lambda)
      .def_readonly("effective_capacitance", &ModeQuantities::effective_capacitance)
      .def_readonly("wavenumber", &ModeQuantities::wavenumber)
      .def_readonly("stop_band", &ModeQuantities::stop_band)
      .def_readonly("impedance", &ModeQuantities::impedance)
      .def_readonly("phase_velocity", &ModeQuantities::phase_velocity);

  py::class_<ModeSet>(m, "ModeSet")
      .def_static("make", &ModeSet::make, py::arg("line"), py::arg("resonator"), py::arg("omega_pump"),
                  py::arg("omega_signal"))
      .def("__getitem__", [](const ModeSet& s, Mode mode) { return s[mode]; })
      .def("propagating", &ModeSet::propagating)
      .def_property_readonly("warnings", &ModeSet::warnings);

  py::class_<ValidityReport>(m, "ValidityReport")
      .def_readonly("flux_ratio", &ValidityReport::flux_ratio)
      .def_readonly("current_ratio", &ValidityReport::current_ratio)
      .def_readonly("taylor_ok", &ValidityReport::taylor_ok)
      .def_readonly("undepleted_ok", &ValidityReport::undepleted_ok)
      .def_readonly("messages", &ValidityReport::messages);
  m.def("validity_check", &validity_check, py::arg("pump_current"), py::arg("signal_current"), py::arg("line"),
        py::arg("modes"));

  py::class_<ClassicalCouplings>(m, "ClassicalCouplings")
      .def_readonly("modulation", &ClassicalCouplings::modulation)
      .def_readonly("mixing", &ClassicalCouplings::mixing)
      .def_readonly("delta_k", &ClassicalCouplings::delta_k);
  m.def("classical_couplings", &classical_couplings, py::arg("line"), py::arg("modes"));

  py::class_<ModeAmplitudes>(m, "ModeAmplitudes")
      .def(py::init([](cplx p, cplx s, cplx i, double z) { return ModeAmplitudes{p, s, i, z}; }), py::arg("pump"),
           py::arg("signal"), py::arg("idler") = cplx{}, py::arg("z") = 0.0)
      .def_readwrite("pump", &ModeAmplitudes::pump)
      .def_readwrite("signal", &ModeAmplitudes::signal)
      .def_readwrite("idler", &ModeAmplitudes::idler)
      .def_readwrite("z", &ModeAmplitudes::z);

  py::class_<OperatingPoint>(m, "OperatingPoint")
      .def_readonly("modes", &OperatingPoint::modes)
      .def_readonly("couplings", &OperatingPoint::couplings)
      .def_readonly("pump0", &OperatingPoint::pump0)
      .def_readonly("signal0", &OperatingPoint::signal0);
  m.def("make_operating_point", &make_operating_point, py::arg("line"), py::arg("resonator"), py::arg("omega_pump"),
        py::arg("pump_current"), py::arg("omega_signal"), py::arg("signal_current"));

  m.def("gain_analytic", &gain_analytic, py::arg("signal0"), py::arg("idler0"), py::arg("pump0"),
        py::arg("couplings"), py::arg("length"));
  m.def("integrate_cme", &integrate_cme, py::arg("state0"), py::arg("couplings"), py::arg("length"),
        py::arg("n_steps"), py::call_guard<py::gil_scoped_release>());
  m.def("integrate_cme_endpoint", &integrate_cme_endpoint, py::arg("state0"), py::arg("couplings"),
        py::arg("length"), py::arg("n_steps"), py::call_guard<py::gil_scoped_release>());
  m.def("manley_rowe", &manley_rowe, py::arg("state"), py::arg("couplings"));
  m.def("to_db", &to_db);

  m.def(
      "gain_sweep",
      [](const LineParams& line, const std::optional<ResonatorParams>& res, double pump_hz, double pump_ratio,
         double signal_ratio, double f_min, double f_max, std::size_t points) {
        return sweep_columns(gain_sweep(make_spec(line, res, pump_hz, pump_ratio, signal_ratio, f_min, f_max, points)));
      },
      py::arg("line"), py::arg("resonator"), py::arg("pump_frequency_hz"), py::arg("pump_current_ratio") = 0.5,
      py::arg("signal_current_ratio") = 1e-6, py::arg("f_min_hz") = 3e9, py::arg("f_max_hz") = 9e9,
      py::arg("points") = 601);

  py::class_<ClassicalPumpCouplings>(m, "ClassicalPumpCouplings")
      .def_readonly("modulation", &ClassicalPumpCouplings::modulation)
      .def_readonly("mixing", &ClassicalPumpCouplings::mixing);
  m.def("classical_pump_couplings", &classical_pump_couplings, py::arg("line"), py::arg("modes"));
  m.def(
      "pump_limit",
      [](const LineParams& line, const ModeSet& modes, double lq) {
        return pump_limit(quantum_couplings_full(line, modes, lq), line, modes);
      },
      py::arg("line"), py::arg("modes"), py::arg("quantisation_length"));
  m.def(
      "delta_omega_and_gt",
      [](const ClassicalPumpCouplings& c, double power) {
        const MismatchRate r = delta_omega_and_gt(c, power);
        return py::make_tuple(r.delta_omega, r.rate);
      },
      py::arg("couplings"), py::arg("pump_power"));
  m.def("gain_quantum", &gain_quantum, py::arg("n_signal"), py::arg("n_idler"), py::arg("correlation"),
        py::arg("couplings"), py::arg("pump_power"), py::arg("time"));
  m.def("transit_time", &transit_time, py::arg("line"), py::arg("modes"));

  m.def(
      "fock_output_distribution",
      [](double kappa) { return fock_output_distribution(kappa).probabilities; }, py::arg("kappa"));
  m.def(
      "coherent_output_distribution",
      [](cplx alpha, double kappa) { return coherent_output_distribution(alpha, kappa).probabilities; },
      py::arg("alpha"), py::arg("kappa"));

  py::class_<TwoModeState>(m, "TwoModeState")
      .def_static("vacuum", &TwoModeState::vacuum)
      .def_static("fock", &TwoModeState::fock, py::arg("n_signal"), py::arg("n_idler"), py::arg("dims_signal"),
                  py::arg("dims_idler"))
      .def_static("coherent", &TwoModeState::coherent, py::arg("alpha_signal"), py::arg("alpha_idler"),
                  py::arg("dims_signal"), py::arg("dims_idler"))
      .def_property_readonly("dims", [](const TwoModeState& s) { return py::make_tuple(s.dims_signal(), s.dims_idler()); })
      .def("__getitem__", [](const TwoModeState& s, std::pair<std::size_t, std::size_t> at) {
        if (at.first >= s.dims_signal() || at.second >= s.dims_idler()) throw py::index_error();
        return s(at.first, at.second);
      })
      .def("norm2", &TwoModeState::norm2)
      .def_readonly("leakage", &TwoModeState::leakage);

  py::class_<Moments>(m, "Moments")
      .def_readonly("n_signal", &Moments::n_signal)
      .def_readonly("n_idler", &Moments::n_idler)
      .def_readonly("var_n_signal", &Moments::var_n_signal)
      .def_readonly("pair", &Moments::pair);

  m.def(
      "propagate",
      [](const TwoModeState& s, cplx rate, double delta_omega, double duration, std::size_t steps,
         double occupancy_guard) {
        PropagationOptions opt;
        opt.occupancy_guard = occupancy_guard;
        return propagate(s, rate, delta_omega, duration, steps, opt);
      },
      py::arg("state"), py::arg("rate"), py::arg("delta_omega"), py::arg("duration"), py::arg("n_steps"),
      py::arg("occupancy_guard") = PropagationOptions{}.occupancy_guard, py::call_guard<py::gil_scoped_release>());
  m.def("squeeze_factored", py::overload_cast<const TwoModeState&, double>(&squeeze_factored), py::arg("state"),
        py::arg("kappa"));
  m.def("moments", &moments);
  m.def("signal_marginal", &signal_marginal);

  m.def(
      "compare_gain",
      [](const LineParams& line, const std::optional<ResonatorParams>& res, double pump_hz, double pump_ratio,
         double signal_ratio, double f_min, double f_max, std::size_t points, bool phase_matched) {
        return comparison_columns(
            compare_gain(make_spec(line, res, pump_hz, pump_ratio, signal_ratio, f_min, f_max, points), phase_matched));
      },
      py::arg("line"), py::arg("resonator"), py::arg("pump_frequency_hz"), py::arg("pump_current_ratio") = 0.5,
      py::arg("signal_current_ratio") = 1e-6, py::arg("f_min_hz") = 3e9, py::arg("f_max_hz") = 9e9,
      py::arg("points") = 601, py::arg("phase_matched") = false);

  m.def(
      "run",
      [](const std::string& subcommand, const std::filesystem::path& config,
         const std::optional<std::filesystem::path>& out) {
        std::ostringstream log;
        const int code = run(subcommand, config, out, log);
        return py::make_tuple(code, log.str());
      },
      py::arg("subcommand"), py::arg("config"), py::arg("out") = std::nullopt,
      "Runs a CLI subcommand; returns (exit_code, log).");
}
