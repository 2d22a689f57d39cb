#include "twpa/config.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <set>
#include <sstream>

#include "twpa/constants.hpp"
#include "twpa/errors.hpp"

namespace twpa {

namespace {

using nlohmann::json;
using namespace units;

// Reads the keys of one object section and rejects anything not consumed.
class Section {
 public:
  Section(const json& doc, std::string name) : name_(std::move(name)) {
    if (!doc.is_object()) throw ConfigError(fmt::format("'{}' must be an object", name_));
    doc_ = &doc;
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return doc_->contains(key);
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    const json& v = (*doc_)[key];
    if (!v.is_number()) throw ConfigError(fmt::format("'{}.{}' must be a number", name_, key));
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(fmt::format("'{}.{}' must be finite", name_, key));
    return x;
  }

  std::size_t count(const std::string& key, std::size_t fallback) {
    if (!has(key)) return fallback;
    const json& v = (*doc_)[key];
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw ConfigError(fmt::format("'{}.{}' must be a non-negative integer", name_, key));
    }
    return v.get<std::size_t>();
  }

  bool flag(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = (*doc_)[key];
    if (!v.is_boolean()) throw ConfigError(fmt::format("'{}.{}' must be true or false", name_, key));
    return v.get<bool>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const json& v = (*doc_)[key];
    if (!v.is_string()) throw ConfigError(fmt::format("'{}.{}' must be a string", name_, key));
    return v.get<std::string>();
  }

  std::vector<std::string> texts(const std::string& key, const std::vector<std::string>& fallback) {
    if (!has(key)) return fallback;
    const json& v = (*doc_)[key];
    if (!v.is_array()) throw ConfigError(fmt::format("'{}.{}' must be an array of strings", name_, key));
    std::vector<std::string> out;
    for (const json& e : v) {
      if (!e.is_string()) throw ConfigError(fmt::format("'{}.{}' must be an array of strings", name_, key));
      out.push_back(e.get<std::string>());
    }
    return out;
  }

  void finish() const {
    for (const auto& [key, value] : doc_->items()) {
      if (!seen_.count(key)) throw ConfigError(fmt::format("unknown key '{}.{}'", name_, key));
    }
  }

 private:
  const json* doc_ = nullptr;
  std::string name_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

bool OutputSettings::wants(const std::string& format) const {
  return std::find(formats.begin(), formats.end(), format) != formats.end();
}

GainSweepSpec RunConfig::gain_spec() const {
  GainSweepSpec spec;
  spec.line = line;
  spec.resonator = resonator;
  spec.pump_frequency_hz = pump_frequency_hz;
  spec.pump_current_ratio = pump_current_ratio;
  spec.signal_current_ratio = signal.current_ratio;
  spec.grid = sweep;
  return spec;
}

std::vector<double> RunConfig::kappa_grid() const {
  if (quantum.kappa_max == 0.0 || quantum.kappa_points < 2) return {0.0};
  std::vector<double> k(quantum.kappa_points);
  for (std::size_t j = 0; j < k.size(); ++j) {
    k[j] = quantum.kappa_max * static_cast<double>(j) / static_cast<double>(k.size() - 1);
  }
  return k;
}

RunConfig default_config() {
  RunConfig c;
  c.line = LineParams::from_inductance(10 * um, 100 * pH, 329 * fF, 39 * fF, 2000);
  c.resonator = ResonatorParams{10 * fF, 100 * pH, 7.036 * pF};
  return c;
}

RunConfig parse_config(const json& document) {
  RunConfig c = default_config();
  Section root(document, "config");

  if (root.has("line")) {
    Section s(document["line"], "line");
    const double a = s.number("a_um", c.line.cell_length / um) * um;
    const double cj = s.number("C_J_fF", c.line.junction_capacitance / fF) * fF;
    const double cg = s.number("C_g_fF", c.line.ground_capacitance / fF) * fF;
    const std::size_t cells = s.count("n_cells", static_cast<std::size_t>(c.line.n_cells));
    const bool by_inductance = s.has("L_J0_pH");
    const bool by_current = s.has("I_c_uA");
    require(!(by_inductance && by_current), "give either 'line.L_J0_pH' or 'line.I_c_uA', not both");
    const double lj = s.number("L_J0_pH", c.line.junction_inductance / pH) * pH;
    const double ic = s.number("I_c_uA", c.line.critical_current / uA) * uA;
    s.finish();
    require(cells >= 1 && cells <= 10'000'000, "'line.n_cells' must lie in [1, 1e7]");
    try {
      c.line = by_current ? LineParams::from_critical_current(a, ic, cj, cg, static_cast<int>(cells))
                          : LineParams::from_inductance(a, lj, cj, cg, static_cast<int>(cells));
    } catch (const DomainError& e) {
      throw ConfigError(fmt::format("line: {}", e.what()));
    }
  }

  if (root.has("resonator")) {
    if (document["resonator"].is_null()) {
      c.resonator.reset();
    } else {
      Section s(document["resonator"], "resonator");
      ResonatorParams r = c.resonator.value_or(ResonatorParams{10 * fF, 100 * pH, 7.036 * pF});
      r.coupling_capacitance = s.number("C_c_fF", r.coupling_capacitance / fF) * fF;
      r.inductance = s.number("L_r_pH", r.inductance / pH) * pH;
      r.capacitance = s.number("C_r_pF", r.capacitance / pF) * pF;
      s.finish();
      try {
        r.validate();
      } catch (const DomainError& e) {
        throw ConfigError(fmt::format("resonator: {}", e.what()));
      }
      c.resonator = r;
    }
  }

  if (root.has("pump")) {
    Section s(document["pump"], "pump");
    c.pump_frequency_hz = s.number("f_GHz", c.pump_frequency_hz / GHz) * GHz;
    c.pump_current_ratio = s.number("I_over_Ic", c.pump_current_ratio);
    s.finish();
  }
  require(c.pump_frequency_hz > 0.0, "'pump.f_GHz' must be positive");
  require(c.pump_current_ratio > 0.0 && c.pump_current_ratio < 1.0, "'pump.I_over_Ic' must lie in (0, 1)");

  if (root.has("signal")) {
    Section s(document["signal"], "signal");
    c.signal.frequency_hz = s.number("f_GHz", c.signal.frequency_hz / GHz) * GHz;
    c.signal.current_ratio = s.number("I_over_Ic", c.signal.current_ratio);
    s.finish();
  }
  require(c.signal.frequency_hz > 0.0, "'signal.f_GHz' must be positive");
  require(c.signal.current_ratio > 0.0, "'signal.I_over_Ic' must be positive");

  if (root.has("sweep")) {
    Section s(document["sweep"], "sweep");
    c.sweep.min_hz = s.number("f_s_min_GHz", c.sweep.min_hz / GHz) * GHz;
    c.sweep.max_hz = s.number("f_s_max_GHz", c.sweep.max_hz / GHz) * GHz;
    c.sweep.points = s.count("n_points", c.sweep.points);
    s.finish();
  }
  c.sweep.validate();

  if (root.has("cme")) {
    Section s(document["cme"], "cme");
    c.cme.current_ratio = s.number("I_s_over_Ic", c.cme.current_ratio);
    c.cme.n_steps = s.count("n_steps", c.cme.n_steps);
    c.cme.samples = s.count("samples", c.cme.samples);
    c.cme.phase_matched = s.flag("phase_matched", c.cme.phase_matched);
    s.finish();
  }
  require(c.cme.current_ratio > 0.0, "'cme.I_s_over_Ic' must be positive");
  require(c.cme.n_steps >= 1, "'cme.n_steps' must be at least 1");
  require(c.cme.samples >= 2, "'cme.samples' must be at least 2");

  if (root.has("quantum")) {
    Section s(document["quantum"], "quantum");
    c.quantum.kappa_max = s.number("kappa_max", c.quantum.kappa_max);
    c.quantum.kappa_points = s.count("n_kappa", c.quantum.kappa_points);
    c.quantum.n_max = s.count("N_max", c.quantum.n_max);
    c.quantum.alpha = s.number("alpha", c.quantum.alpha);
    s.finish();
  }
  require(c.quantum.kappa_max >= 0.0, "'quantum.kappa_max' must be non-negative");
  require(c.quantum.kappa_points >= 1, "'quantum.n_kappa' must be at least 1");
  require(c.quantum.n_max >= 1 && c.quantum.n_max <= 4096, "'quantum.N_max' must lie in [1, 4096]");
  require(c.quantum.alpha > 0.0, "'quantum.alpha' must be positive");

  if (root.has("output")) {
    Section s(document["output"], "output");
    c.output.directory = s.text("directory", c.output.directory);
    c.output.formats = s.texts("formats", c.output.formats);
    s.finish();
  }
  for (const std::string& f : c.output.formats) {
    require(f == "csv" || f == "json" || f == "svg", fmt::format("unsupported output format '{}'", f));
  }
  root.finish();

  try {
    ModeSet::make(c.line, c.resonator, units::angular(c.pump_frequency_hz), units::angular(c.pump_frequency_hz))
        .require_propagating();
  } catch (const DomainError& e) {
    throw ConfigError(fmt::format("'pump.f_GHz' = {:g} is outside the propagating band: {}",
                                  c.pump_frequency_hz / GHz, e.what()));
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read config '{}'", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  json document;
  try {
    document = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("config '{}' is not valid JSON: {}", path.string(), e.what()));
  }
  return parse_config(document);
}

nlohmann::ordered_json to_si_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["line"] = {{"cell_length_m", c.line.cell_length},
               {"junction_inductance_h", c.line.junction_inductance},
               {"critical_current_a", c.line.critical_current},
               {"junction_capacitance_f", c.line.junction_capacitance},
               {"ground_capacitance_f", c.line.ground_capacitance},
               {"n_cells", c.line.n_cells},
               {"length_m", c.line.length()}};
  if (c.resonator) {
    j["resonator"] = {{"coupling_capacitance_f", c.resonator->coupling_capacitance},
                      {"inductance_h", c.resonator->inductance},
                      {"capacitance_f", c.resonator->capacitance}};
  } else {
    j["resonator"] = nullptr;
  }
  j["pump"] = {{"frequency_hz", c.pump_frequency_hz},
               {"current_a", c.pump_current_ratio * c.line.critical_current},
               {"current_ratio", c.pump_current_ratio}};
  j["signal"] = {{"frequency_hz", c.signal.frequency_hz},
                 {"current_a", c.signal.current_ratio * c.line.critical_current},
                 {"current_ratio", c.signal.current_ratio}};
  j["sweep"] = {{"min_hz", c.sweep.min_hz}, {"max_hz", c.sweep.max_hz}, {"points", c.sweep.points}};
  j["cme"] = {{"signal_current_a", c.cme.current_ratio * c.line.critical_current},
              {"n_steps", c.cme.n_steps},
              {"samples", c.cme.samples},
              {"phase_matched", c.cme.phase_matched}};
  j["quantum"] = {{"kappa_max", c.quantum.kappa_max},
                  {"kappa_points", c.quantum.kappa_points},
                  {"n_max", c.quantum.n_max},
                  {"alpha", c.quantum.alpha}};
  j["output"] = {{"directory", c.output.directory}, {"formats", c.output.formats}};
  return j;
}

}  // namespace twpa
