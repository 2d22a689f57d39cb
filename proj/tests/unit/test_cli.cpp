#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "twpa/cli.hpp"
#include "twpa/config.hpp"
#include "twpa/errors.hpp"
#include "twpa/io.hpp"

using namespace twpa;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Scratch {
  fs::path dir;
  Scratch() : dir(fs::temp_directory_path() / ("twpa_cli_" + std::to_string(::getpid()))) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }

  fs::path config(const std::string& name, const json& doc) const {
    const fs::path p = dir / name;
    std::ofstream(p) << doc.dump();
    return p;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

json small_sweep() {
  return json{{"sweep", {{"f_s_min_GHz", 3}, {"f_s_max_GHz", 9}, {"n_points", 61}}},
              {"quantum", {{"kappa_max", 1.5}, {"n_kappa", 4}, {"N_max", 20}}},
              {"cme", {{"n_steps", 2000}, {"samples", 11}}}};
}

}  // namespace

TEST_CASE("config units and defaults") {
  const RunConfig d = parse_config(json::object());
  CHECK(d.line.junction_inductance == doctest::Approx(100e-12));
  CHECK(d.line.critical_current == doctest::Approx(3.2911e-6).epsilon(1e-4));
  CHECK(d.resonator.has_value());
  CHECK(d.sweep.points == 601);

  const RunConfig c = parse_config(json{{"line", {{"I_c_uA", 2.0}, {"C_J_fF", 0}, {"n_cells", 10}}},
                                        {"pump", {{"f_GHz", 4.0}, {"I_over_Ic", 0.3}}},
                                        {"resonator", nullptr}});
  CHECK(c.line.critical_current == doctest::Approx(2e-6));
  CHECK(c.line.junction_capacitance == 0.0);
  CHECK(c.line.n_cells == 10);
  CHECK(c.pump_frequency_hz == doctest::Approx(4e9));
  CHECK_FALSE(c.resonator.has_value());

  const json si = to_si_json(c);
  CHECK(si["line"]["critical_current_a"].get<double>() == doctest::Approx(2e-6));
  CHECK(si["resonator"].is_null());
  CHECK(si["pump"]["current_a"].get<double>() == doctest::Approx(0.6e-6));
}

TEST_CASE("config rejects bad documents") {
  CHECK_THROWS_AS(parse_config(json{{"colour", "red"}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"line", {{"L_J0", 100}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"line", {{"L_J0_pH", 100}, {"I_c_uA", 3}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"line", {{"C_g_fF", -1}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"line", {{"C_g_fF", "39"}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"sweep", {{"f_s_min_GHz", 9}, {"f_s_max_GHz", 3}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"sweep", {{"n_points", 0}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"pump", {{"f_GHz", 40}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"pump", {{"f_GHz", 5.9959}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"output", {{"formats", {"png"}}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json::array()), ConfigError);

  try {
    parse_config(json{{"quantum", {{"kappa", 1}}}});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("quantum.kappa") != std::string::npos);
  }
}

TEST_CASE("kappa grid") {
  RunConfig c = default_config();
  c.quantum.kappa_max = 0.0;
  CHECK(c.kappa_grid() == std::vector<double>{0.0});
  c.quantum.kappa_max = 2.0;
  c.quantum.kappa_points = 5;
  CHECK(c.kappa_grid() == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
}

TEST_CASE("csv formatting and round trip") {
  CHECK(format_value(1.0) == "1.000000000000e+00");
  CHECK(format_value(-2.5e-17) == "-2.500000000000e-17");
  CHECK(format_value(std::nan("")) == "nan");

  const Table t{{"a", "b"}, {{1.0, std::nan("")}, {1.0 / 3.0, -4e12}}};
  const std::string csv = to_csv(t);
  CHECK(csv == "a,b\n1.000000000000e+00,nan\n3.333333333333e-01,-4.000000000000e+12\n");
  const Table back = parse_csv(csv);
  CHECK(back.header == t.header);
  CHECK(back.rows.size() == 2);
  CHECK(std::isnan(back.rows[0][1]));
  CHECK(back.rows[1][0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(back.column("b") == 1);
  CHECK_THROWS_AS(back.column("c"), ConfigError);
  CHECK_THROWS_AS(parse_csv("a,b\n1,2,3\n"), ConfigError);
  CHECK_THROWS_AS(parse_csv("a\nx\n"), ConfigError);

  const json j = to_json(t);
  CHECK(j[0]["b"].is_null());
  CHECK(j[1]["a"].get<double>() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("subcommands write parseable, deterministic files") {
  Scratch s;
  json doc = small_sweep();
  doc["output"] = {{"formats", {"csv", "json", "svg"}}};
  const fs::path cfg = s.config("run.json", doc);
  std::ostringstream log;

  const std::vector<std::pair<std::string, std::vector<std::string>>> expected{
      {"dispersion", {"dispersion.csv"}},
      {"gain", {"gain.csv"}},
      {"cme", {"cme.csv"}},
      {"photon-stats", {"photon_fock.csv", "photon_coherent.csv", "heatmap_fock.csv", "heatmap_coherent.csv"}},
      {"compare", {"compare_nopm.csv", "compare_pm.csv"}},
      {"validity", {"validity.csv"}},
  };
  for (const auto& [sub, files] : expected) {
    const fs::path a = s.dir / (sub + "_a");
    const fs::path b = s.dir / (sub + "_b");
    REQUIRE(run(sub, cfg, a, log) == exit_ok);
    REQUIRE(run(sub, cfg, b, log) == exit_ok);
    CHECK(fs::exists(a / "config.si.json"));
    for (const std::string& f : files) {
      const std::string text = slurp(a / f);
      CHECK(text == slurp(b / f));
      CHECK(text.find('\r') == std::string::npos);
      const Table t = parse_csv(text);
      CHECK_FALSE(t.rows.empty());
      const fs::path stem = fs::path(f).replace_extension();
      CHECK(fs::exists(a / stem.string().append(".json")));
    }
  }

  const Table gain = parse_csv(slurp(s.dir / "gain_a" / "gain.csv"));
  CHECK(gain.header == std::vector<std::string>{"omega_s_hz", "gain_nopm_db", "gain_pm_db"});
  const Table cmp = parse_csv(slurp(s.dir / "compare_a" / "compare_pm.csv"));
  CHECK(cmp.header == std::vector<std::string>{"omega_s_hz", "gain_classical_db", "gain_classicalised_db", "delta_db"});
  const Table heat = parse_csv(slurp(s.dir / "photon-stats_a" / "heatmap_fock.csv"));
  CHECK(heat.header == std::vector<std::string>{"kappa", "gain_db", "N", "probability"});
  CHECK(heat.rows.size() == 4 * 21);
  const Table dist = parse_csv(slurp(s.dir / "photon-stats_a" / "photon_fock.csv"));
  CHECK(dist.header == std::vector<std::string>{"N", "probability"});

  const std::string svg = slurp(s.dir / "gain_a" / "gain.svg");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<!-- data\nomega_s_hz,gain_nopm_db,gain_pm_db\n") != std::string::npos);
  CHECK(fs::exists(s.dir / "photon-stats_a" / "heatmap_coherent.svg"));
}

TEST_CASE("gain sweep with the default device") {
  Scratch s;
  std::ostringstream log;
  const fs::path cfg = s.config("default.json", json::object());
  REQUIRE(run("gain", cfg, s.dir / "out", log) == exit_ok);
  const Table t = parse_csv(slurp(s.dir / "out" / "gain.csv"));
  REQUIRE(t.rows.size() == 601);
  double peak_nopm = -1e9;
  double peak_pm = -1e9;
  double dip = 1e9;
  for (const auto& row : t.rows) {
    peak_nopm = std::max(peak_nopm, row[1]);
    peak_pm = std::max(peak_pm, row[2]);
    if (row[0] >= 5.9e9 && row[0] <= 6.1e9) dip = std::min(dip, row[2]);
  }
  CHECK(peak_pm > peak_nopm + 5.0);
  CHECK(dip < peak_pm - 10.0);
}

TEST_CASE("photon-stats at zero amplification gives the input") {
  Scratch s;
  std::ostringstream log;
  const fs::path cfg = s.config("k0.json", json{{"quantum", {{"kappa_max", 0}, {"N_max", 8}}}});
  REQUIRE(run("photon-stats", cfg, s.dir / "out", log) == exit_ok);
  const Table fock = parse_csv(slurp(s.dir / "out" / "photon_fock.csv"));
  for (const auto& row : fock.rows) CHECK(row[1] == (row[0] == 1.0 ? 1.0 : 0.0));
  const Table heat = parse_csv(slurp(s.dir / "out" / "heatmap_fock.csv"));
  CHECK(heat.rows.size() == 9);
  for (const auto& row : heat.rows) CHECK(row[0] == 0.0);
}

TEST_CASE("validity at the reference operating point") {
  Scratch s;
  std::ostringstream log;
  const fs::path ok = s.config("ok.json", json{{"pump", {{"I_over_Ic", 0.5}}}, {"signal", {{"I_over_Ic", 0.005}}}});
  REQUIRE(run("validity", ok, s.dir / "ok", log) == exit_ok);
  const Table t = parse_csv(slurp(s.dir / "ok" / "validity.csv"));
  CHECK(t.rows[0][t.column("taylor_ok")] == 1.0);
  CHECK(t.rows[0][t.column("undepleted_ok")] == 1.0);

  const fs::path bad = s.config("bad.json", json{{"pump", {{"I_over_Ic", 0.5}}}, {"signal", {{"I_over_Ic", 0.05}}}});
  std::ostringstream warn;
  REQUIRE(run("validity", bad, s.dir / "bad", warn) == exit_ok);
  CHECK(parse_csv(slurp(s.dir / "bad" / "validity.csv")).rows[0][3] == 0.0);
  CHECK(warn.str().find("undepleted pump approximation fails") != std::string::npos);
}

TEST_CASE("exit codes") {
  Scratch s;
  std::ostringstream log;
  CHECK(run("gain", s.dir / "missing.json", std::nullopt, log) == exit_config);
  CHECK(run("gain", s.config("unknown.json", json{{"extra", 1}}), s.dir / "o", log) == exit_config);
  CHECK(run("nonsense", s.config("fine.json", json::object()), s.dir / "o", log) == exit_config);
  {
    std::ofstream(s.dir / "broken.json") << "{ not json";
    CHECK(run("gain", s.dir / "broken.json", s.dir / "o", log) == exit_config);
  }
  const fs::path huge = s.config("huge.json", json{{"quantum", {{"kappa_max", 9}, {"n_kappa", 2}}}});
  CHECK(run("photon-stats", huge, s.dir / "o", log) == exit_domain);
  const fs::path stop = s.config("stop.json", json{{"signal", {{"f_GHz", 5.99582}}}});
  CHECK(run("validity", stop, s.dir / "o", log) == exit_domain);
}
