#include <cmath>
#include <limits>

#include "doctest.h"
#include "fixtures.hpp"
#include "twpa/circuit.hpp"
#include "twpa/errors.hpp"

using namespace twpa;
using fixtures::rel;
using fixtures::w;
using namespace twpa::units;

TEST_CASE("flux quantum and critical current") {
  CHECK(rel(constants::phi0, 3.2910597847545328e-16) < 1e-14);
  const LineParams line = fixtures::line();
  CHECK(rel(line.critical_current, 3.2910597847545328e-6) < 1e-14);
  CHECK(line.length() == doctest::Approx(0.02).epsilon(1e-15));

  const LineParams same = LineParams::from_critical_current(10 * um, line.critical_current, 329 * fF, 39 * fF, 2000);
  CHECK(rel(same.junction_inductance, 100 * pH) < 1e-14);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(LineParams::from_inductance(-1.0, 100 * pH, 329 * fF, 39 * fF, 10), DomainError);
  CHECK_THROWS_AS(LineParams::from_inductance(10 * um, 100 * pH, 329 * fF, 0.0, 10), DomainError);
  CHECK_THROWS_AS(LineParams::from_inductance(10 * um, 100 * pH, 329 * fF, 39 * fF, 0), DomainError);
  CHECK_THROWS_AS(LineParams::from_inductance(10 * um, 100 * pH, -1 * fF, 39 * fF, 10), DomainError);

  LineParams broken = fixtures::line();
  broken.critical_current *= 1.001;
  CHECK_THROWS_AS(broken.validate(), DomainError);

  const LineParams no_junction_cap = fixtures::line(0.0);
  CHECK(std::isinf(no_junction_cap.cutoff()));

  ResonatorParams bad = fixtures::resonator();
  bad.capacitance = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("bare shunt impedance") {
  const LineParams line = fixtures::line();
  const auto z = effective_impedance(w(1.0), line);
  CHECK(z.real() == 0.0);
  CHECK(rel(z.imag(), -4080.895976715265) < 1e-12);
  for (double f : {0.1, 3.0, 7.7, 40.0}) CHECK(effective_impedance(w(f), line).real() == 0.0);
  CHECK_THROWS_AS(effective_impedance(0.0, line), DomainError);
}

TEST_CASE("dispersion factor") {
  const LineParams line = fixtures::line();
  CHECK(lambda_factor(0.0, line) == 1.0);
  CHECK(rel(lambda_factor(w(5.97), line), 1.0485387727317697) < 1e-12);
  CHECK(rel(lambda_factor(0.999 * line.cutoff(), line), 500.25012506253127) < 1e-9);
  CHECK_THROWS_AS(lambda_factor(line.cutoff(), line), DomainError);
  CHECK_THROWS_AS(lambda_factor(1.5 * line.cutoff(), line), DomainError);

  double previous = 1.0;
  for (int j = 1; j < 200; ++j) {
    const double value = lambda_factor(line.cutoff() * j / 200.0, line);
    CHECK(value > previous);
    previous = value;
  }
}

TEST_CASE("wavenumber without resonator") {
  const LineParams line = fixtures::line();
  const Wavenumber k = wavenumber(w(5.97), line);
  CHECK_FALSE(k.stop_band);
  CHECK(k.value.imag() == 0.0);
  CHECK(rel(k.value.real(), 7585.4045912354676) < 1e-12);
  CHECK(rel(wavenumber(w(5.0), line).value.real(), 6307.3971903666546) < 1e-12);

  const double omega = w(1e-7);
  const double linear = omega * std::sqrt(line.junction_inductance * line.ground_capacitance) / line.cell_length;
  CHECK(rel(wavenumber(omega, line).value.real(), linear) < 1e-12);

  for (double f = 0.5; f < 27.0; f *= 1.3) CHECK(wavenumber(w(f), line).value.real() * line.cell_length < 1.0);
}

TEST_CASE("characteristic impedance and phase velocity") {
  const LineParams line = fixtures::line();
  CHECK(rel(char_impedance(1e-3, line).real(), 50.636968354183331) < 1e-12);
  CHECK(rel(char_impedance(w(5.97), line).real(), 51.851335139246766) < 1e-12);

  const LineParams flat = fixtures::line(0.0);
  CHECK(rel(char_impedance(w(7.0), flat).real(), std::sqrt(100 * pH / (39 * fF))) < 1e-14);

  const double v = phase_velocity(w(5.0), line);
  CHECK(rel(v, w(5.0) / 6307.3971903666546) < 1e-12);
}

TEST_CASE("resonator poles") {
  const ResonatorParams res = fixtures::resonator();
  CHECK(hertz(res.resonance()) == doctest::Approx(6.000e9).epsilon(0.001 / 6.0));
  CHECK(rel(hertz(res.resonance()), 6000082422.044321) < 1e-12);
  CHECK(rel(hertz(res.loaded_pole()), 5995823116.8848082) < 1e-12);

  const LineParams line = fixtures::line();
  try {
    effective_impedance(res.loaded_pole() * (1 + 1e-8), line, res);
    FAIL("expected a singularity error");
  } catch (const SingularityError& e) {
    CHECK(rel(e.pole_hz(), 5995823116.8848082) < 1e-12);
  }
  CHECK_THROWS_AS(wavenumber(res.loaded_pole(), line, res), SingularityError);
  CHECK_NOTHROW(effective_impedance(res.resonance(), line, res));
}

TEST_CASE("resonator-loaded line") {
  const LineParams line = fixtures::line();
  const ResonatorParams res = fixtures::resonator();

  for (double f = 1.0; f < 20.0; f += 0.37) {
    const double omega = w(f);
    if (std::abs(omega / res.loaded_pole() - 1.0) < 1e-6) continue;
    CHECK(effective_impedance(omega, line, res).real() == 0.0);
  }

  CHECK(rel(effective_capacitance(w(5.97), line, res), 5.0637023009390798e-14) < 1e-10);
  CHECK(rel(wavenumber(w(5.97), line, res).value.real(), 8643.3187501798237) < 1e-10);

  // just above the loaded pole the shunt is inductive
  const double inside = res.loaded_pole() * (1.0 + 5e-5);
  const Wavenumber k = wavenumber(inside, line, res);
  CHECK(k.stop_band);
  CHECK(k.value.real() == 0.0);
  CHECK(k.value.imag() > 0.0);
  CHECK_THROWS_AS(phase_velocity(inside, line, res), DomainError);
  CHECK(char_impedance(inside, line, res).real() == doctest::Approx(0.0));

  const double above = res.resonance() * (1.0 + 1e-3);
  CHECK_FALSE(wavenumber(above, line, res).stop_band);
}

TEST_CASE("weak coupling recovers the bare line") {
  const LineParams line = fixtures::line();
  for (double f : {2.0, 5.97, 8.5}) {
    const double bare = wavenumber(w(f), line).value.real();
    double previous = std::numeric_limits<double>::infinity();
    for (double cc : {1e-18, 1e-21, 1e-24, 1e-27}) {
      const double loaded = wavenumber(w(f), line, fixtures::resonator(cc)).value.real();
      const double deviation = rel(loaded, bare);
      CHECK(deviation <= previous);
      previous = deviation;
    }
    CHECK(previous < 1e-9);
  }
}

TEST_CASE("far-detuned resonator acts as static loading") {
  const LineParams line = fixtures::line();
  // tank resonance moved to 60 GHz
  ResonatorParams res = fixtures::resonator();
  res.capacitance /= 100.0;
  LineParams static_load = line;
  static_load.ground_capacitance += res.coupling_capacitance;
  for (double f : {3.0, 5.97, 9.0}) {
    const double loaded = wavenumber(w(f), line, res).value.real();
    const double reference = wavenumber(w(f), static_load).value.real();
    CHECK(rel(loaded, reference) < 1e-3);
  }
}

TEST_CASE("current to amplitude") {
  const LineParams line = fixtures::line();
  const double zc = char_impedance(w(5.97), line).real();
  CHECK(current_to_amplitude(0.0, w(5.97), zc) == 0.0);
  const double a = current_to_amplitude(0.5 * line.critical_current, w(5.97), zc);
  CHECK(a < 0.0);
  CHECK(rel(std::abs(a), 2.2746339672379642e-15) < 1e-12);
  for (double i : {1e-9, 3.3e-7, 1.645e-6, 2e-5}) {
    CHECK(rel(amplitude_to_current(current_to_amplitude(i, w(6.3), zc), w(6.3), zc), i) < 1e-12);
  }
  CHECK_THROWS_AS(current_to_amplitude(1.0, 0.0, zc), DomainError);
}

TEST_CASE("mode set") {
  const LineParams line = fixtures::line();
  const ModeSet modes = ModeSet::make(line, std::nullopt, w(5.97), w(5.0));
  CHECK(modes[Mode::idler].omega == 2.0 * w(5.97) - w(5.0));
  CHECK(rel(modes[Mode::idler].wavenumber.real(), 8894.0417229544878) < 1e-12);
  for (Mode m : all_modes) {
    const ModeQuantities& q = modes[m];
    CHECK(rel(q.phase_velocity, q.omega / std::abs(q.wavenumber)) < 1e-12);
    CHECK(q.lambda >= 1.0);
  }
  CHECK(modes.propagating());
  CHECK(modes.warnings().empty());

  CHECK_THROWS_AS(ModeSet::make(line, std::nullopt, w(5.97), w(12.0)), DomainError);
  CHECK_THROWS_AS(ModeSet::make(line, std::nullopt, w(5.97), w(-1.0)), DomainError);

  const ResonatorParams res = fixtures::resonator();
  const ModeSet blocked = ModeSet::make(line, res, w(5.97), res.loaded_pole() * (1.0 + 5e-5));
  CHECK_FALSE(blocked.propagating());
  CHECK_THROWS_AS(blocked.require_propagating(), DomainError);

  const LineParams heavy = LineParams::from_inductance(10 * um, 100 * pH, 329 * fF, 39e3 * fF, 100);
  const ModeSet coarse = ModeSet::make(heavy, std::nullopt, w(10.0), w(9.0));
  CHECK_FALSE(coarse.warnings().empty());
}

TEST_CASE("derived quantities are pure") {
  const LineParams line = fixtures::line();
  const ResonatorParams res = fixtures::resonator();
  for (double f : {3.1, 5.97, 7.3}) {
    CHECK(wavenumber(w(f), line, res).value == wavenumber(w(f), line, res).value);
    CHECK(char_impedance(w(f), line, res) == char_impedance(w(f), line, res));
  }
}

TEST_CASE("validity gates") {
  const LineParams line = fixtures::line();
  const ModeSet modes = ModeSet::make(line, std::nullopt, w(5.97), w(5.0));
  const double ip = 0.5 * line.critical_current;

  const ValidityReport ok = validity_check(ip, ip / 100.0, line, modes);
  CHECK(ok.taylor_ok);
  CHECK(ok.undepleted_ok);
  CHECK(ok.messages.empty());
  CHECK(rel(ok.flux_ratio, 0.52426938636588485) < 1e-12);
  CHECK(ok.current_ratio == doctest::Approx(0.5));

  const ValidityReport depleted = validity_check(ip, ip, line, modes);
  CHECK_FALSE(depleted.undepleted_ok);
  CHECK(depleted.messages.size() == 1);
  CHECK_FALSE(validity_check(ip, ip / 10.0, line, modes).undepleted_ok);
  CHECK(validity_check(ip, ip / 10.0 * 0.999, line, modes).undepleted_ok);

  const ValidityReport strong = validity_check(0.8 * line.critical_current, 0.0, line, modes);
  CHECK(strong.flux_ratio < flux_ratio_limit);
  CHECK(strong.taylor_ok);
  CHECK(strong.messages.size() == 1);

  for (double ratio : {0.3, 0.9, 1.1, 1.2, 1.5}) {
    const ValidityReport r = validity_check(ratio * line.critical_current, 0.0, line, modes);
    CHECK(r.taylor_ok == (r.flux_ratio < 1.2));
  }
  CHECK_THROWS_AS(validity_check(-1.0, 0.0, line, modes), DomainError);
}
