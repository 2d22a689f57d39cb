#include "twpa/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <limits>

#include "twpa/classical_cme.hpp"
#include "twpa/constants.hpp"
#include "twpa/correspondence.hpp"
#include "twpa/errors.hpp"
#include "twpa/io.hpp"
#include "twpa/quantum.hpp"

namespace twpa {

namespace {

namespace fs = std::filesystem;

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

class Emitter {
 public:
  Emitter(const RunConfig& config, fs::path dir, std::ostream& log) : config_(config), dir_(std::move(dir)), log_(log) {}

  void table(const std::string& stem, const Table& t) {
    if (config_.output.wants("csv")) put(stem + ".csv", to_csv(t));
    if (config_.output.wants("json")) put(stem + ".json", to_json(t).dump(2) + "\n");
  }

  void svg(const std::string& stem, const std::string& content) {
    if (config_.output.wants("svg")) put(stem + ".svg", content);
  }

  void json(const std::string& stem, const nlohmann::ordered_json& j) { put(stem + ".json", j.dump(2) + "\n"); }

 private:
  void put(const std::string& name, const std::string& content) {
    write_file(dir_ / name, content);
    fmt::print(log_, "wrote {}\n", (dir_ / name).string());
  }

  const RunConfig& config_;
  fs::path dir_;
  std::ostream& log_;
};

std::vector<double> column(const Table& t, std::size_t j, double scale = 1.0) {
  std::vector<double> out;
  out.reserve(t.rows.size());
  for (const auto& row : t.rows) out.push_back(row[j] * scale);
  return out;
}

void dispersion(const RunConfig& c, Emitter& out) {
  Table t{{"f_hz", "lambda", "k_rad_per_m", "z_c_ohm", "k_pm_rad_per_m", "z_c_pm_ohm"}, {}};
  for (double f : c.sweep.frequencies()) {
    const double omega = units::angular(f);
    std::vector<double> row{f, nan, nan, nan, nan, nan};
    try {
      row[1] = lambda_factor(omega, c.line);
      const Wavenumber k = wavenumber(omega, c.line);
      if (!k.stop_band) {
        row[2] = k.value.real();
        row[3] = char_impedance(omega, c.line).real();
      }
      if (c.resonator) {
        const Wavenumber kp = wavenumber(omega, c.line, c.resonator);
        if (!kp.stop_band) {
          row[4] = kp.value.real();
          row[5] = char_impedance(omega, c.line, c.resonator).real();
        }
      }
    } catch (const DomainError&) {
    }
    t.rows.push_back(std::move(row));
  }
  out.table("dispersion", t);
  out.svg("dispersion", svg_line_plot("Wavenumber", "f [GHz]", "k [rad/m]",
                                      {{"no resonator", column(t, 0, 1e-9), column(t, 2)},
                                       {"with resonator", column(t, 0, 1e-9), column(t, 4)}},
                                      t));
}

void gain(const RunConfig& c, Emitter& out, std::ostream& log) {
  const SweepTable sweep = gain_sweep(c.gain_spec());
  const Table t = gain_table(sweep);
  out.table("gain", t);
  out.svg("gain", svg_line_plot("Power gain", "f_s [GHz]", "G [dB]",
                                {{"without phase matching", column(t, 0, 1e-9), column(t, 1)},
                                 {"with phase matching", column(t, 0, 1e-9), column(t, 2)}},
                                t));
  fmt::print(log, "gain: {} rows, {} invalid without and {} invalid with phase matching\n", sweep.rows.size(),
             sweep.invalid_nopm, sweep.invalid_pm);
}

void cme(const RunConfig& c, Emitter& out, std::ostream& log) {
  const std::optional<ResonatorParams> res = c.cme.phase_matched ? c.resonator : std::nullopt;
  const double ic = c.line.critical_current;
  const OperatingPoint op =
      make_operating_point(c.line, res, units::angular(c.pump_frequency_hz), c.pump_current_ratio * ic,
                           units::angular(c.signal.frequency_hz), c.cme.current_ratio * ic);
  const ModeAmplitudes start{op.pump0, op.signal0, 0.0, 0.0};
  const std::vector<ModeAmplitudes> traj = integrate_cme(start, op.couplings, c.line.length(), c.cme.n_steps);
  const std::array<double, 2> mr0 = manley_rowe(start, op.couplings);

  Table t{{"z_m", "pump_abs", "signal_abs", "idler_abs", "gain_db", "manley_rowe_sum", "manley_rowe_difference"}, {}};
  const std::size_t samples = std::min(c.cme.samples, traj.size());
  for (std::size_t j = 0; j < samples; ++j) {
    const std::size_t at = j * (traj.size() - 1) / (samples - 1);
    const ModeAmplitudes& s = traj[at];
    const std::array<double, 2> mr = manley_rowe(s, op.couplings);
    t.rows.push_back({s.z, std::abs(s.pump), std::abs(s.signal), std::abs(s.idler),
                      to_db(std::norm(s.signal) / std::norm(op.signal0)), mr[0], mr[1]});
  }
  out.table("cme", t);
  out.svg("cme", svg_line_plot("Mode amplitudes along the line", "z [m]", "|A| [Wb]",
                               {{"pump", column(t, 0), column(t, 1)},
                                {"signal", column(t, 0), column(t, 2)},
                                {"idler", column(t, 0), column(t, 3)}},
                               t));
  const std::array<double, 2> mr1 = manley_rowe(traj.back(), op.couplings);
  fmt::print(log, "cme: pump depletion {:.6f}, invariant drift {:.3e} / {:.3e}\n",
             std::norm(traj.back().pump) / std::norm(start.pump), std::abs(mr1[0] / mr0[0] - 1.0),
             std::abs(mr1[1] / mr0[1] - 1.0));
}

void photon_stats(const RunConfig& c, Emitter& out) {
  const double kappa = c.quantum.kappa_max;
  const cplx alpha = c.quantum.alpha;
  out.table("photon_fock", distribution_table(fock_output_distribution(kappa, c.quantum.n_max).probabilities));
  out.table("photon_coherent",
            distribution_table(coherent_output_distribution(alpha, kappa, c.quantum.n_max).probabilities));
  const std::vector<double> kappas = c.kappa_grid();
  for (InputKind kind : {InputKind::fock, InputKind::coherent}) {
    const std::string stem = kind == InputKind::fock ? "heatmap_fock" : "heatmap_coherent";
    const std::vector<HeatmapRow> rows = distribution_heatmap(kind, alpha, kappas, c.quantum.n_max);
    const Table t = heatmap_table(rows);
    out.table(stem, t);
    out.svg(stem, svg_heatmap(kind == InputKind::fock ? "Fock input" : "Coherent input", rows, t));
  }
}

void compare(const RunConfig& c, Emitter& out, std::ostream& log) {
  const ComparisonSummary summary = compare_gain(c.gain_spec());
  auto emit = [&](const std::string& stem, const ComparisonTable& table, const std::string& title) {
    const Table t = comparison_table(table);
    out.table(stem, t);
    out.svg(stem, svg_line_plot(title, "f_s [GHz]", "G [dB]",
                                {{"coupled-mode", column(t, 0, 1e-9), column(t, 1)},
                                 {"classicalised", column(t, 0, 1e-9), column(t, 2)}},
                                t));
    fmt::print(log, "{}: max |delta| {:.4f} dB at {:.4f} GHz, peak concentration {:.3f}\n", stem,
               table.max_abs_delta_db, table.rows.empty() ? nan : table.rows[table.worst_row].frequency_hz * 1e-9,
               peak_concentration(table));
  };
  emit("compare_nopm", summary.without_pm, "Gain without phase matching");
  if (c.resonator) emit("compare_pm", summary.with_pm, "Gain with phase matching");

  nlohmann::ordered_json j;
  j["max_abs_delta_db_nopm"] = summary.without_pm.max_abs_delta_db;
  if (c.resonator) {
    j["max_abs_delta_db_pm"] = summary.with_pm.max_abs_delta_db;
    j["peak_concentration_pm"] = peak_concentration(summary.with_pm);
  }
  out.json("compare_summary", j);
}

void validity(const RunConfig& c, Emitter& out, std::ostream& log) {
  const ModeSet modes = ModeSet::make(c.line, c.resonator, units::angular(c.pump_frequency_hz),
                                      units::angular(c.signal.frequency_hz));
  const double ic = c.line.critical_current;
  const ValidityReport report = validity_check(c.pump_current_ratio * ic, c.signal.current_ratio * ic, c.line, modes);
  out.table("validity", Table{{"flux_ratio", "current_ratio", "taylor_ok", "undepleted_ok"},
                              {{report.flux_ratio, report.current_ratio, report.taylor_ok ? 1.0 : 0.0,
                                report.undepleted_ok ? 1.0 : 0.0}}});
  fmt::print(log, "validity: flux ratio {:.4f} ({}), current ratio {:.4f}, undepleted pump {}\n", report.flux_ratio,
             report.taylor_ok ? "ok" : "too large", report.current_ratio, report.undepleted_ok ? "ok" : "violated");
  for (const std::string& m : report.messages) fmt::print(log, "warning: {}\n", m);
}

}  // namespace

void run_subcommand(const std::string& subcommand, const RunConfig& config, const fs::path& out_dir,
                    std::ostream& log) {
  Emitter out(config, out_dir, log);
  out.json("config.si", to_si_json(config));
  if (subcommand == "dispersion") {
    dispersion(config, out);
  } else if (subcommand == "gain") {
    gain(config, out, log);
  } else if (subcommand == "cme") {
    cme(config, out, log);
  } else if (subcommand == "photon-stats") {
    photon_stats(config, out);
  } else if (subcommand == "compare") {
    compare(config, out, log);
  } else if (subcommand == "validity") {
    validity(config, out, log);
  } else {
    throw ConfigError(fmt::format("unknown subcommand '{}'", subcommand));
  }
}

int run(const std::string& subcommand, const fs::path& config_path, const std::optional<fs::path>& out_dir,
        std::ostream& log) {
  try {
    const RunConfig config = load_config(config_path);
    run_subcommand(subcommand, config, out_dir.value_or(fs::path(config.output.directory)), log);
    return exit_ok;
  } catch (const ConfigError& e) {
    fmt::print(log, "config error: {}\n", e.what());
    return exit_config;
  } catch (const DivergenceError& e) {
    fmt::print(log, "divergence at step {}: {}\n", e.step(), e.what());
    return exit_divergence;
  } catch (const DomainError& e) {
    fmt::print(log, "domain error: {}\n", e.what());
    return exit_domain;
  } catch (const TruncationError& e) {
    fmt::print(log, "truncation error: {}\n", e.what());
    return exit_domain;
  } catch (const std::exception& e) {
    fmt::print(log, "error: {}\n", e.what());
    return exit_failure;
  }
}

}  // namespace twpa
