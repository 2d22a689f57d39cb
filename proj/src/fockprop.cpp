#include "twpa/fockprop.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "twpa/errors.hpp"

namespace twpa {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double poisson_tail = 1e-12;

// One photon-number-difference sector n_s - n_i = d, indexed by m = min(n_s, n_i).
struct Sector {
  long d = 0;
  std::vector<cplx> v;

  std::size_t offset_signal() const { return d > 0 ? static_cast<std::size_t>(d) : 0; }
  std::size_t offset_idler() const { return d < 0 ? static_cast<std::size_t>(-d) : 0; }
  std::size_t fitting(std::size_t ds, std::size_t di) const {
    const std::size_t os = offset_signal();
    const std::size_t oi = offset_idler();
    if (os >= ds || oi >= di) return 0;
    return std::min(ds - os, di - oi);
  }
  // sqrt(n_s n_i) at position m: the pair-creation matrix element from m-1 to m
  double ladder(std::size_t m) const {
    return std::sqrt(static_cast<double>(m + offset_signal()) * static_cast<double>(m + offset_idler()));
  }
};

std::vector<Sector> split(const TwoModeState& state, bool active_only) {
  std::vector<Sector> sectors;
  const long ds = static_cast<long>(state.dims_signal());
  const long di = static_cast<long>(state.dims_idler());
  for (long d = -(di - 1); d <= ds - 1; ++d) {
    Sector s;
    s.d = d;
    const std::size_t len = s.fitting(state.dims_signal(), state.dims_idler());
    s.v.resize(len);
    bool any = false;
    for (std::size_t m = 0; m < len; ++m) {
      s.v[m] = state(m + s.offset_signal(), m + s.offset_idler());
      any = any || s.v[m] != 0.0;
    }
    if (any || !active_only) sectors.push_back(std::move(s));
  }
  return sectors;
}

TwoModeState join(const std::vector<Sector>& sectors, std::size_t ds, std::size_t di) {
  TwoModeState out(ds, di);
  out(0, 0) = 0.0;
  for (const Sector& s : sectors) {
    const std::size_t len = std::min(s.v.size(), s.fitting(ds, di));
    for (std::size_t m = 0; m < len; ++m) out(m + s.offset_signal(), m + s.offset_idler()) = s.v[m];
  }
  return out;
}

double edge(const std::vector<Sector>& sectors) {
  double sum = 0.0;
  for (const Sector& s : sectors) {
    if (!s.v.empty()) sum += std::norm(s.v.back());
  }
  return sum;
}

// out = G v with G = create A+ + annihilate A on one sector
void apply_generator(const Sector& s, const std::vector<cplx>& v, cplx create, cplx annihilate,
                     std::vector<cplx>& out) {
  const std::size_t len = v.size();
  out.assign(len, 0.0);
  for (std::size_t m = 0; m < len; ++m) {
    cplx acc = 0.0;
    if (m > 0) acc += create * s.ladder(m) * v[m - 1];
    if (m + 1 < len) acc += annihilate * s.ladder(m + 1) * v[m + 1];
    out[m] = acc;
  }
}

void taylor_step(std::vector<Sector>& sectors, cplx create, cplx annihilate, int terms) {
  std::vector<cplx> term;
  std::vector<cplx> next;
  for (Sector& s : sectors) {
    term = s.v;
    for (int j = 1; j <= terms; ++j) {
      apply_generator(s, term, create, annihilate, next);
      const double inv = 1.0 / j;
      for (std::size_t m = 0; m < next.size(); ++m) {
        next[m] *= inv;
        s.v[m] += next[m];
      }
      term.swap(next);
    }
  }
}

}  // namespace

TwoModeState::TwoModeState(std::size_t dims_signal, std::size_t dims_idler)
    : ds_(dims_signal), di_(dims_idler), coeffs_(dims_signal * dims_idler, 0.0) {
  if (ds_ < 1 || di_ < 1) throw DomainError("Fock truncation needs at least one level per mode");
  coeffs_[0] = 1.0;
}

TwoModeState TwoModeState::vacuum(std::size_t dims_signal, std::size_t dims_idler) {
  return TwoModeState(dims_signal, dims_idler);
}

TwoModeState TwoModeState::fock(std::size_t n_signal, std::size_t n_idler, std::size_t dims_signal,
                                std::size_t dims_idler) {
  if (n_signal >= dims_signal || n_idler >= dims_idler) {
    throw DomainError(fmt::format("Fock state |{},{}> does not fit a {}x{} truncation", n_signal, n_idler, dims_signal,
                                  dims_idler));
  }
  TwoModeState s(dims_signal, dims_idler);
  s(0, 0) = 0.0;
  s(n_signal, n_idler) = 1.0;
  return s;
}

TwoModeState TwoModeState::coherent(cplx alpha_signal, cplx alpha_idler, std::size_t dims_signal,
                                    std::size_t dims_idler) {
  auto amplitudes = [](cplx alpha) {
    const double mean = std::norm(alpha);
    std::vector<cplx> c;
    double cumulative = 0.0;
    for (std::size_t n = 0;; ++n) {
      const double logp = -mean + (n == 0 ? 0.0 : n * std::log(mean)) - std::lgamma(n + 1.0);
      const double p = std::exp(logp);
      c.push_back(std::sqrt(p) * (n == 0 ? 1.0 : std::pow(alpha / std::abs(alpha), static_cast<double>(n))));
      cumulative += p;
      if (1.0 - cumulative < poisson_tail && static_cast<double>(n) > mean) break;
      if (mean == 0.0) break;
    }
    return c;
  };
  const std::vector<cplx> s = amplitudes(alpha_signal);
  const std::vector<cplx> i = amplitudes(alpha_idler);
  TwoModeState state(std::max(dims_signal, s.size() + 1), std::max(dims_idler, i.size() + 1));
  state(0, 0) = 0.0;
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = 0; b < i.size(); ++b) state(a, b) = s[a] * i[b];
  }
  const double scale = 1.0 / std::sqrt(state.norm2());
  for (cplx& c : state.coeffs_) c *= scale;
  return state;
}

double TwoModeState::norm2() const {
  double sum = 0.0;
  for (const cplx& c : coeffs_) sum += std::norm(c);
  return sum;
}

double TwoModeState::edge_occupancy() const {
  double sum = 0.0;
  for (std::size_t b = 0; b < di_; ++b) sum += std::norm((*this)(ds_ - 1, b));
  for (std::size_t a = 0; a + 1 < ds_; ++a) sum += std::norm((*this)(a, di_ - 1));
  return sum;
}

TwoModeState TwoModeState::padded(std::size_t dims_signal, std::size_t dims_idler) const {
  if (dims_signal < ds_ || dims_idler < di_) throw DomainError("padding cannot shrink a truncation");
  TwoModeState out(dims_signal, dims_idler);
  out(0, 0) = 0.0;
  for (std::size_t a = 0; a < ds_; ++a) {
    for (std::size_t b = 0; b < di_; ++b) out(a, b) = (*this)(a, b);
  }
  out.time = time;
  out.leakage = leakage;
  return out;
}

TwoModeState propagate(const TwoModeState& state0, cplx rate, double delta_omega, double duration,
                       std::size_t n_steps, const PropagationOptions& options) {
  if (n_steps < 1) throw DomainError("propagation needs at least one step");
  if (state0.dims_signal() < 2 || state0.dims_idler() < 2) throw DomainError("propagation needs dims >= 2");
  std::size_t ds = state0.dims_signal();
  std::size_t di = state0.dims_idler();
  std::vector<Sector> sectors = split(state0, true);
  double leakage = state0.leakage;
  const double dt = duration / static_cast<double>(n_steps);

  auto guard = [&] {
    double occupied = edge(sectors);
    while (occupied > options.occupancy_guard && (ds < options.max_dim || di < options.max_dim)) {
      ds = std::min(2 * ds, options.max_dim);
      di = std::min(2 * di, options.max_dim);
      for (Sector& s : sectors) s.v.resize(s.fitting(ds, di), 0.0);
      occupied = edge(sectors);
    }
    leakage = std::max(leakage, occupied);
    if (occupied > options.leakage_limit) {
      throw TruncationError(fmt::format("truncation leakage {:.3g} exceeds {:g} at {}x{}; increase the Fock dims",
                                        occupied, options.leakage_limit, ds, di));
    }
  };

  for (std::size_t k = 0; k < n_steps; ++k) {
    const double midpoint = state0.time + (static_cast<double>(k) + 0.5) * dt;
    const cplx phase = std::exp(-I * (delta_omega * midpoint));
    double remaining = dt;
    while (remaining > 0.0) {
      guard();
      const double bound = 2.0 * std::abs(rate) * remaining * std::sqrt(static_cast<double>(ds) * di);
      const double parts = std::max(1.0, std::ceil(bound / options.max_step_norm));
      const double h = remaining / parts;
      taylor_step(sectors, I * h * rate * phase, I * h * std::conj(rate) * std::conj(phase), options.taylor_terms);
      remaining = parts == 1.0 ? 0.0 : remaining - h;
    }
  }
  guard();

  TwoModeState out = join(sectors, ds, di);
  out.time = state0.time + duration;
  out.leakage = leakage;
  return out;
}

TwoModeState squeeze_factored(const TwoModeState& state0, double kappa, std::size_t dims_signal,
                              std::size_t dims_idler) {
  const double t = std::tanh(kappa);
  const double log_cosh = std::log(std::cosh(kappa));
  std::vector<Sector> sectors = split(state0, true);
  for (Sector& s : sectors) {
    // exp(i t a_s a_i): terminating lowering series
    std::vector<cplx> term = s.v;
    std::vector<cplx> acc = s.v;
    for (std::size_t j = 1; j < term.size(); ++j) {
      std::vector<cplx> next(term.size(), 0.0);
      for (std::size_t m = 1; m < term.size(); ++m) next[m - 1] = I * t / static_cast<double>(j) * s.ladder(m) * term[m];
      term.swap(next);
      for (std::size_t m = 0; m < acc.size(); ++m) acc[m] += term[m];
    }
    // exp(-ln cosh(kappa) (1 + n_s + n_i))
    for (std::size_t m = 0; m < acc.size(); ++m) {
      const double photons = static_cast<double>(2 * m + s.offset_signal() + s.offset_idler());
      acc[m] *= std::exp(-log_cosh * (1.0 + photons));
    }
    // exp(i t a_s+ a_i+): raising series cut at the output dims
    acc.resize(s.fitting(dims_signal, dims_idler), 0.0);
    term = acc;
    for (std::size_t j = 1; j < acc.size(); ++j) {
      std::vector<cplx> next(term.size(), 0.0);
      bool alive = false;
      for (std::size_t m = 1; m < term.size(); ++m) {
        next[m] = I * t / static_cast<double>(j) * s.ladder(m) * term[m - 1];
        alive = alive || next[m] != 0.0;
      }
      if (!alive) break;
      term.swap(next);
      for (std::size_t m = 0; m < acc.size(); ++m) acc[m] += term[m];
    }
    s.v = std::move(acc);
  }
  TwoModeState out = join(sectors, dims_signal, dims_idler);
  out.time = state0.time;
  out.leakage = out.edge_occupancy();
  return out;
}

TwoModeState squeeze_factored(const TwoModeState& state0, double kappa) {
  return squeeze_factored(state0, kappa, state0.dims_signal(), state0.dims_idler());
}

Moments moments(const TwoModeState& state) {
  const std::size_t ds = state.dims_signal();
  const std::size_t di = state.dims_idler();
  const double norm = state.norm2();
  double ns = 0.0, ni = 0.0, ns2 = 0.0;
  cplx a = 0.0, a2 = 0.0, pair = 0.0;
  for (std::size_t s = 0; s < ds; ++s) {
    for (std::size_t i = 0; i < di; ++i) {
      const cplx c = state(s, i);
      const double p = std::norm(c);
      ns += s * p;
      ni += i * p;
      ns2 += static_cast<double>(s) * s * p;
      if (s >= 1) a += std::conj(state(s - 1, i)) * c * std::sqrt(static_cast<double>(s));
      if (s >= 2) a2 += std::conj(state(s - 2, i)) * c * std::sqrt(static_cast<double>(s) * (s - 1));
      if (s >= 1 && i >= 1) pair += std::conj(state(s - 1, i - 1)) * c * std::sqrt(static_cast<double>(s) * i);
    }
  }
  Moments out;
  out.n_signal = ns / norm;
  out.n_idler = ni / norm;
  out.var_n_signal = ns2 / norm - out.n_signal * out.n_signal;
  out.pair = pair / norm;
  a /= norm;
  a2 /= norm;
  const double x_mean = std::sqrt(2.0) * a.real();
  const double p_mean = std::sqrt(2.0) * a.imag();
  out.var_x_signal = (2.0 * a2.real() + 2.0 * out.n_signal + 1.0) / 2.0 - x_mean * x_mean;
  out.var_p_signal = (-2.0 * a2.real() + 2.0 * out.n_signal + 1.0) / 2.0 - p_mean * p_mean;
  return out;
}

std::vector<double> signal_marginal(const TwoModeState& state) {
  std::vector<double> p(state.dims_signal(), 0.0);
  for (std::size_t s = 0; s < state.dims_signal(); ++s) {
    for (std::size_t i = 0; i < state.dims_idler(); ++i) p[s] += std::norm(state(s, i));
  }
  return p;
}

std::size_t default_dims(double kappa) {
  if (!(kappa >= 0.0)) throw DomainError(fmt::format("kappa must be non-negative (got {})", kappa));
  if (kappa <= 1.0) return 32;
  if (kappa <= 2.0) return 128;
  throw DomainError(fmt::format("no default Fock truncation for kappa = {} > 2; set the dims explicitly", kappa));
}

}  // namespace twpa
