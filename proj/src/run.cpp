// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#include "rydphase/run.hpp"

#include "rydphase/errors.hpp"
#include "rydphase/spectral.hpp"
#include "rydphase/time_oracle.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#ifndef RYDPHASE_VERSION
#define RYDPHASE_VERSION "unknown"
#endif

namespace rydphase
{

namespace fs = std::filesystem;

namespace
{

std::string fmt(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Short form for human-readable summaries.
std::string brief(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string csv_field(const std::string &s)
{
  if (s.find_first_of(",\"\n") == std::string::npos)
  {
    return s;
  }
  std::string out = "\"";
  for (char c : s)
  {
    out += c == '"' ? std::string("\"\"") : std::string(1, c);
  }
  return out + "\"";
}

bool set_packet_or_gate(PointState &s, const std::string &name, double v)
{
  if (name == "bandwidth")
  {
    s.packet.bandwidth = v;
  }
  else if (name == "omega_center")
  {
    s.packet.omega_center = v;
  }
  else if (name == "window_ratio")
  {
    s.packet.window_ratio = v;
  }
  else if (name == "phi")
  {
    s.gate.phi = v;
  }
  else if (name == "T_gate")
  {
    s.gate.T_gate = v;
  }
  else
  {
    return false;
  }
  return true;
}

std::optional<double> get_packet_or_gate(const PointState &s, const std::string &name)
{
  if (name == "bandwidth")
  {
    return s.packet.bandwidth;
  }
  if (name == "omega_center")
  {
    return s.packet.omega_center;
  }
  if (name == "window_ratio")
  {
    return s.packet.window_ratio;
  }
  if (name == "phi")
  {
    return s.gate.phi;
  }
  if (name == "T_gate")
  {
    return s.gate.T_gate;
  }
  return std::nullopt;
}

#define RYDPHASE_ATOMIC_FIELDS(X)                                                             \
  X(kappa) X(Omega) X(Gamma) X(gamma_a) X(gamma_q) X(Delta) X(epsilon) X(C3) X(g_single)   \
  X(rho0) X(Rc)
#define RYDPHASE_CQED_FIELDS(X)                                                               \
  X(kappa) X(g) X(Omega) X(eps) X(Gamma1) X(Gamma2) X(Gamma3) X(alpha1) X(alpha2)

[[noreturn]] void unknown_name(const PointState &s, const std::string &name)
{
  throw InvalidArgument("parameter '" + name + "' is not defined for the " +
                        to_string(s.backend) + " backend");
}

}  // namespace

std::string version_string() { return RYDPHASE_VERSION; }

PointState base_state(const RunConfig &cfg)
{
  PointState s;
  s.backend = cfg.backend;
  s.params = cfg.params;
  s.cqed = cfg.cqed;
  s.dressing = cfg.dressing;
  s.packet = cfg.packet;
  s.ensemble = cfg.ensemble;
  s.gate = cfg.gate;
  if (cfg.qubit_lifetime > 0.0)
  {
    set_value(s, "qubit_lifetime", cfg.qubit_lifetime);
  }
  return s;
}

void set_value(PointState &s, const std::string &name, double v)
{
  if (!std::isfinite(v))
  {
    throw InvalidArgument("parameter '" + name + "' must be finite");
  }
  if (set_packet_or_gate(s, name, v))
  {
    return;
  }
  if (s.backend == Backend::Cqed)
  {
#define RYDPHASE_SET(f)                                                                       \
  if (name == #f)                                                                             \
  {                                                                                           \
    s.cqed.f = v;                                                                             \
    return;                                                                                   \
  }
    RYDPHASE_CQED_FIELDS(RYDPHASE_SET)
#undef RYDPHASE_SET
    if (name == "qubit_lifetime")
    {
      s.qubit_lifetime = v;
      s.cqed = cqed_from_qubit_lifetime(v, s.cqed);
      return;
    }
    unknown_name(s, name);
  }
  if (s.backend == Backend::Empty)
  {
    if (name == "kappa")
    {
      s.params.kappa = v;
      return;
    }
    unknown_name(s, name);
  }
#define RYDPHASE_SET(f)                                                                       \
  if (name == #f)                                                                             \
  {                                                                                           \
    s.params.f = v;                                                                           \
    if (name == "epsilon")                                                                    \
    {                                                                                         \
      s.dressing = {DressingMode::Epsilon, 0.0};                                              \
    }                                                                                         \
    return;                                                                                   \
  }
  RYDPHASE_ATOMIC_FIELDS(RYDPHASE_SET)
#undef RYDPHASE_SET
  if (name == "abs_Delta")
  {
    s.params.Delta = std::signbit(s.params.Delta) ? -std::abs(v) : std::abs(v);
  }
  else if (name == "pop")
  {
    s.dressing = {DressingMode::Population, v};
  }
  else if (name == "theta")
  {
    s.dressing = {DressingMode::Theta, v};
  }
  else if (name == "n")
  {
    s.rydberg_n = v;
    const auto [C3, gamma] = rydberg_scaling(v);
    s.params.C3 = C3;
    s.params.gamma_q = gamma;
  }
  else if (name == "r_center")
  {
    s.ensemble.r_center = v;
  }
  else if (name == "width")
  {
    s.ensemble.width = v;
  }
  else if (name == "r_min")
  {
    s.ensemble.r_min = v;
  }
  else if (name == "r_max")
  {
    s.ensemble.r_max = v;
  }
  else
  {
    unknown_name(s, name);
  }
}

double get_value(const PointState &s, const std::string &name)
{
  if (auto v = get_packet_or_gate(s, name))
  {
    return *v;
  }
  if (s.backend == Backend::Cqed)
  {
#define RYDPHASE_GET(f)                                                                       \
  if (name == #f)                                                                             \
  {                                                                                           \
    return s.cqed.f;                                                                          \
  }
    RYDPHASE_CQED_FIELDS(RYDPHASE_GET)
#undef RYDPHASE_GET
    if (name == "qubit_lifetime")
    {
      return s.qubit_lifetime;
    }
    unknown_name(s, name);
  }
  if (s.backend == Backend::Empty)
  {
    if (name == "kappa")
    {
      return s.params.kappa;
    }
    unknown_name(s, name);
  }
  if (name == "epsilon" || name == "pop" || name == "theta")
  {
    const DressedQubit dq = state_dressing(s);
    if (name == "pop")
    {
      return dq.ryd_pop;
    }
    if (name == "theta")
    {
      // magnitude of the unswapped angle, the quantity set_value takes
      return std::abs(dq.swapped ? dq.theta + std::numbers::pi / 2.0 : dq.theta);
    }
    // epsilon from Delta_bar^2 = Delta^2 + 4 eps^2
    const double d = s.params.Delta;
    return 0.5 * std::sqrt(std::max(0.0, dq.delta_bar * dq.delta_bar - d * d));
  }
#define RYDPHASE_GET(f)                                                                       \
  if (name == #f)                                                                             \
  {                                                                                           \
    return s.params.f;                                                                        \
  }
  RYDPHASE_ATOMIC_FIELDS(RYDPHASE_GET)
#undef RYDPHASE_GET
  if (name == "abs_Delta")
  {
    return std::abs(s.params.Delta);
  }
  if (name == "n")
  {
    return s.rydberg_n;
  }
  if (name == "r_center")
  {
    return s.ensemble.r_center;
  }
  if (name == "width")
  {
    return s.ensemble.width;
  }
  if (name == "r_min")
  {
    return s.ensemble.r_min;
  }
  if (name == "r_max")
  {
    return s.ensemble.r_max;
  }
  unknown_name(s, name);
}

DressedQubit state_dressing(const PointState &s)
{
  const double delta = s.params.Delta;
  switch (s.dressing.mode)
  {
  case DressingMode::Epsilon:
    return dress(delta, s.params.epsilon);
  case DressingMode::Population:
  {
    double pop = s.dressing.value;
    // population 1/2 needs an infinite drive; stay a hair away from it
    if (std::abs(pop - 0.5) < 1e-12)
    {
      pop = pop < 0.5 ? 0.5 - 1e-12 : 0.5 + 1e-12;
    }
    return dress_for_population(delta, pop);
  }
  case DressingMode::Theta:
  {
    const double theta = s.dressing.value;
    if (!(theta >= 0.0) || !(theta < std::numbers::pi / 4.0))
    {
      throw InvalidArgument("dressing angle must lie in [0, pi/4)");
    }
    return dress(delta, 0.5 * std::abs(delta) * std::tan(2.0 * theta));
  }
  }
  throw InvalidArgument("unknown dressing mode");
}

PointResult evaluate_point(const PointState &s)
{
  PointResult r;
  r.state = s;
  const Wavepacket packet = packet_for_bandwidth(s.packet.bandwidth, s.packet.omega_center,
                                                 s.packet.n_samples, s.packet.window_ratio);
  r.sigma_T = packet.sigma_T;
  r.T_window = packet.T_window;
  r.sigma_omega = packet.sigma_omega;
  if (s.backend == Backend::Cqed)
  {
    s.cqed.validate();
    r.outcome = cqed_gate_error(s.cqed, packet, s.gate.phi);
    return r;
  }
  s.params.validate();
  if (s.backend == Backend::Empty)
  {
    const ReflectionSpectrum spec = reflect_empty(s.params.kappa, packet.support_grid());
    r.outcome.T0 = overlap(packet, spec);
    r.outcome.T1 = r.outcome.T0;
    r.outcome.eta = 1.0;
    r.outcome.phi = s.gate.phi;
    r.outcome.error = gate_error(r.outcome.T0, r.outcome.T1, 1.0, s.gate.phi);
    return r;
  }
  r.dressed = state_dressing(s);
  SystemParams p = s.params;
  p.epsilon = get_value(s, "epsilon");
  r.state.params.epsilon = p.epsilon;
  const auto &e = s.ensemble;
  const AncillaEnsemble ens = e.geometry == Geometry::FullCloud
                                ? build_cloud(p, e.r_min, e.r_max, e.n_bins)
                                : build_shell(p, e.r_center, e.width, e.n_bins);
  r.G2 = ens.G2;
  r.outcome = evaluate_gate(p, r.dressed, ens, packet, {s.gate.phi, s.gate.T_gate});
  return r;
}

std::vector<const SweepRow *> SweepTable::curve(const std::string &label) const
{
  std::vector<const SweepRow *> out;
  for (const auto &row : rows)
  {
    if (row.label == label)
    {
      out.push_back(&row);
    }
  }
  return out;
}

namespace
{

struct Task
{
  std::size_t case_index;
  std::size_t grid_index;
};

std::string point_context(const SweepCase &c, const RunConfig &cfg, std::optional<double> grid)
{
  std::string out = c.label.empty() ? "" : "case '" + c.label + "'";
  if (grid)
  {
    out += (out.empty() ? "" : ", ") + cfg.sweep.grid_name + " = " + brief(*grid);
  }
  return out.empty() ? "" : out + ": ";
}

PointState case_state(const RunConfig &cfg, const SweepCase &c, std::optional<double> grid)
{
  PointState state = base_state(cfg);
  if (c.dressing)
  {
    state.dressing = *c.dressing;
  }
  if (c.ensemble)
  {
    state.ensemble = *c.ensemble;
  }
  for (const auto &[name, value] : c.set)
  {
    set_value(state, name, value);
  }
  if (grid)
  {
    set_value(state, cfg.sweep.grid_name, *grid);
  }
  return state;
}

const std::vector<FreeParameter> &case_free(const RunConfig &cfg, const SweepCase &c)
{
  return c.free ? *c.free : cfg.sweep.free;
}

// Optimizes one point. With grid_starts false only the seeds are descended from.
SweepRow solve_point(const RunConfig &cfg, const SweepCase &c, std::optional<double> grid,
                     const std::vector<const SweepRow *> &seeds, bool grid_starts)
{
  const PointState state = case_state(cfg, c, grid);
  const std::vector<FreeParameter> &free = case_free(cfg, c);

  SweepRow row;
  row.label = c.label;
  row.grid_value = grid ? *grid : std::numeric_limits<double>::quiet_NaN();
  if (free.empty())
  {
    row.result = evaluate_point(state);
    row.evaluations = 1;
    return row;
  }
  SearchSpec spec;
  spec.free = free;
  spec.starts = cfg.sweep.starts;
  spec.tol = cfg.sweep.tol;
  spec.x_tol = cfg.sweep.x_tol;
  spec.max_evals = cfg.sweep.max_evals;
  spec.refine = grid_starts ? cfg.sweep.refine : 0;
  spec.start_grid = grid_starts;
  if (grid_starts)
  {
    for (const NamedValues &start : cfg.sweep.extra_starts)
    {
      std::vector<double> x;
      for (const auto &f : free)
      {
        double v = f.scale == Scale::Log ? std::sqrt(f.lower * f.upper) : 0.5 * (f.lower + f.upper);
        for (const auto &[name, value] : start)
        {
          if (name == f.name)
          {
            v = std::clamp(value, f.lower, f.upper);
          }
        }
        x.push_back(v);
      }
      spec.extra_starts.push_back(std::move(x));
    }
  }
  for (const SweepRow *seed : seeds)
  {
    std::vector<double> x;
    for (const auto &f : free)
    {
      x.push_back(std::clamp(get_value(seed->result.state, f.name), f.lower, f.upper));
    }
    spec.extra_starts.push_back(std::move(x));
  }
  auto apply = [&](const std::vector<double> &x) {
    PointState s = state;
    for (std::size_t i = 0; i < free.size(); ++i)
    {
      set_value(s, free[i].name, x[i]);
    }
    return s;
  };
  const MinimizeResult m =
    minimize(spec, [&](const std::vector<double> &x) { return evaluate_point(apply(x)).outcome.error; });
  row.result = evaluate_point(apply(m.best_x));
  row.evaluations = m.evaluations;
  for (const auto &f : free)
  {
    row.optimized.push_back(f.name);
  }
  return row;
}

}  // namespace

SweepTable run_sweep(const RunConfig &cfg, int threads)
{
  std::vector<SweepCase> cases = cfg.sweep.cases;
  if (cases.empty())
  {
    cases.push_back({});
  }
  std::vector<std::optional<double>> grid;
  for (double g : cfg.sweep.grid)
  {
    grid.emplace_back(g);
  }
  if (grid.empty())
  {
    grid.emplace_back(std::nullopt);
  }

  SweepTable table;
  table.backend = cfg.backend;
  table.grid_name = cfg.sweep.grid_name;
  table.rows.resize(cases.size() * grid.size());
  auto index_of = [&](const std::string &label) {
    for (std::size_t i = 0; i < cases.size(); ++i)
    {
      if (cases[i].label == label)
      {
        return i;
      }
    }
    throw ConfigError("unknown case label '" + label + "'");
  };

  auto guarded = [&](const SweepCase &sc, std::optional<double> g, auto &&fn) {
    try
    {
      fn();
    }
    catch (const InvalidArgument &e)
    {
      throw InvalidArgument(point_context(sc, cfg, g) + e.what());
    }
    catch (const Error &e)
    {
      throw NumericalError(point_context(sc, cfg, g) + e.what());
    }
  };

  // unseeded cases first, then the cases seeded from them
  for (int layer = 0; layer < 2; ++layer)
  {
    std::vector<Task> tasks;
    for (std::size_t c = 0; c < cases.size(); ++c)
    {
      if (cases[c].seed_from.empty() == (layer == 0))
      {
        for (std::size_t g = 0; g < grid.size(); ++g)
        {
          tasks.push_back({c, g});
        }
      }
    }
    parallel_for(tasks.size(), threads, [&](std::size_t t) {
      const auto [c, g] = tasks[t];
      const SweepCase &sc = cases[c];
      std::vector<const SweepRow *> seeds;
      if (!sc.seed_from.empty())
      {
        seeds.push_back(&table.rows[index_of(sc.seed_from) * grid.size() + g]);
      }
      guarded(sc, grid[g], [&] {
        table.rows[c * grid.size() + g] = solve_point(cfg, sc, grid[g], seeds, true);
      });
    });
  }

  // cross-seeding from neighbouring grid points; each pass reads the previous pass only, so the
  // order of work is irrelevant
  for (int pass = 0; pass < cfg.sweep.cross_seed && grid.size() > 1; ++pass)
  {
    const std::vector<SweepRow> previous = table.rows;
    std::vector<char> improved(previous.size(), 0);
    parallel_for(previous.size(), threads, [&](std::size_t i) {
      const std::size_t c = i / grid.size(), g = i % grid.size();
      const SweepCase &sc = cases[c];
      if (case_free(cfg, sc).empty())
      {
        return;
      }
      std::vector<const SweepRow *> seeds;
      if (g > 0)
      {
        seeds.push_back(&previous[i - 1]);
      }
      if (g + 1 < grid.size())
      {
        seeds.push_back(&previous[i + 1]);
      }
      guarded(sc, grid[g], [&] {
        SweepRow row = solve_point(cfg, sc, grid[g], seeds, false);
        row.evaluations += previous[i].evaluations;
        if (row.result.outcome.error < previous[i].result.outcome.error)
        {
          table.rows[i] = std::move(row);
          improved[i] = 1;
        }
        else
        {
          table.rows[i].evaluations = row.evaluations;
        }
      });
    });
    if (std::find(improved.begin(), improved.end(), 1) == improved.end())
    {
      break;
    }
  }
  return table;
}

void write_sweep_csv(std::ostream &os, const SweepTable &table)
{
  const std::string grid_col = "grid_" + (table.grid_name.empty() ? "point" : table.grid_name);
  os << "case," << grid_col << ',';
  switch (table.backend)
  {
  case Backend::Atomic:
    os << "kappa,Omega,Gamma,gamma_a,gamma_q,Delta,epsilon,C3,g_single,rho0,Rc,n,theta,ryd_pop,"
          "swapped,geometry,r_min,r_max,r_center,width,n_bins,G2,";
    break;
  case Backend::Cqed:
    os << "kappa,g,Omega,eps,Gamma1,Gamma2,Gamma3,alpha1,alpha2,anharmonic_regime,"
          "qubit_lifetime,";
    break;
  case Backend::Empty:
    os << "kappa,";
    break;
  }
  os << "bandwidth,omega_center,window_ratio,sigma_T,T_window," << gate_outcome_header()
     << ",evaluations,optimized\n";
  for (const auto &row : table.rows)
  {
    const PointResult &r = row.result;
    const PointState &s = r.state;
    os << csv_field(row.label) << ',' << fmt(row.grid_value) << ',';
    switch (table.backend)
    {
    case Backend::Atomic:
    {
      const auto &p = s.params;
      const auto &e = s.ensemble;
      for (double v : {p.kappa, p.Omega, p.Gamma, p.gamma_a, p.gamma_q, p.Delta, p.epsilon, p.C3,
                       p.g_single, p.rho0, p.Rc, s.rydberg_n, r.dressed.theta, r.dressed.ryd_pop})
      {
        os << fmt(v) << ',';
      }
      os << (r.dressed.swapped ? 1 : 0) << ',' << to_string(e.geometry) << ',';
      if (e.geometry == Geometry::FullCloud)
      {
        os << fmt(e.r_min) << ',' << fmt(e.r_max) << ",,,";
      }
      else
      {
        os << ",," << fmt(e.r_center) << ',' << fmt(e.width) << ',';
      }
      os << e.n_bins << ',' << fmt(r.G2) << ',';
      break;
    }
    case Backend::Cqed:
    {
      const auto &c = s.cqed;
      for (double v : {c.kappa, c.g, c.Omega, c.eps, c.Gamma1, c.Gamma2, c.Gamma3, c.alpha1,
                       c.alpha2})
      {
        os << fmt(v) << ',';
      }
      os << (c.anharmonic_regime() ? 1 : 0) << ',' << fmt(s.qubit_lifetime) << ',';
      break;
    }
    case Backend::Empty:
      os << fmt(s.params.kappa) << ',';
      break;
    }
    os << fmt(s.packet.bandwidth) << ',' << fmt(s.packet.omega_center) << ','
       << fmt(s.packet.window_ratio) << ',' << fmt(r.sigma_T) << ',' << fmt(r.T_window) << ','
       << fmt(r.outcome.T0.real()) << ',' << fmt(r.outcome.T0.imag()) << ','
       << fmt(r.outcome.T1.real()) << ',' << fmt(r.outcome.T1.imag()) << ','
       << fmt(r.outcome.eta) << ',' << fmt(r.outcome.phi) << ',' << fmt(r.outcome.error) << ','
       << row.evaluations << ',';
    std::string names;
    for (const auto &n : row.optimized)
    {
      names += (names.empty() ? "" : ";") + n;
    }
    os << csv_field(names) << '\n';
  }
}

void write_atomically(const std::string &path, const std::string &text, bool force)
{
  if (!force && fs::exists(path))
  {
    throw IoError("'" + path + "' exists; pass --force to overwrite");
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
    {
      throw IoError("cannot write '" + tmp + "'");
    }
    out << text;
    out.flush();
    if (!out)
    {
      throw IoError("write to '" + tmp + "' failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec)
  {
    fs::remove(tmp);
    throw IoError("cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
  }
}

namespace
{

std::vector<double> linspace(double a, double b, std::size_t n)
{
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

AncillaEnsemble state_ensemble(const PointState &s)
{
  SystemParams p = s.params;
  p.epsilon = get_value(s, "epsilon");
  const auto &e = s.ensemble;
  return e.geometry == Geometry::FullCloud ? build_cloud(p, e.r_min, e.r_max, e.n_bins)
                                           : build_shell(p, e.r_center, e.width, e.n_bins);
}

std::string run_reflection(const RunConfig &cfg, RunReport &report)
{
  const PointState s = base_state(cfg);
  const auto grid = linspace(cfg.spectrum.omega_min, cfg.spectrum.omega_max, cfg.spectrum.n_omega);
  ReflectionSpectrum spec;
  switch (cfg.backend)
  {
  case Backend::Empty:
    spec = reflect_empty(s.params.kappa, grid);
    break;
  case Backend::Cqed:
    s.cqed.validate();
    spec = reflect_cqed(s.cqed, cfg.spectrum.qubit, grid);
    break;
  case Backend::Atomic:
  {
    s.params.validate();
    const AncillaEnsemble ens = state_ensemble(s);
    spec = cfg.spectrum.qubit == 0 ? reflect_q0(s.params, ens.G2, grid)
                                   : reflect_q1(s.params, state_dressing(s), ens, grid);
    break;
  }
  }
  double dev = 0.0;
  for (const auto &r : spec.R)
  {
    dev = std::max(dev, std::abs(std::abs(r) - 1.0));
  }
  std::ostringstream os;
  write_spectrum_csv(os, spec);
  report.summary = "reflection: " + std::to_string(spec.size()) +
                   " frequencies, max ||R| - 1| = " + brief(dev) +
                   (spec.singular.empty() ? "" : ", " + std::to_string(spec.singular.size()) +
                                                    " ill-conditioned points");
  return os.str();
}

std::string run_oracle(const RunConfig &cfg, RunReport &report)
{
  const PointState s = base_state(cfg);
  s.params.validate();
  const AncillaEnsemble ens = state_ensemble(s);
  const DressedQubit dq = state_dressing(s);
  const Wavepacket packet = packet_for_bandwidth(s.packet.bandwidth, s.packet.omega_center,
                                                 s.packet.n_samples, s.packet.window_ratio);
  OracleOptions opts;
  opts.dt = cfg.oracle.dt;
  opts.settle_time = cfg.oracle.settle_time;
  const TimeTrace trace = integrate(s.params, dq, ens, packet, opts);
  const auto [omega, out_spec] = trace_output_spectrum(trace);
  const auto in_spec = trace_input_spectrum(trace).second;
  const ReflectionSpectrum spec = reflect_q1(s.params, dq, ens, omega);
  const Discrepancy d = compare_spectral(trace, spec);

  std::ostringstream os;
  os << "omega,re_expected,im_expected,re_oracle,im_oracle\n";
  for (std::size_t i = 0; i < omega.size(); ++i)
  {
    const cplx expected = spec.R[i] * in_spec[i];
    os << fmt(omega[i]) << ',' << fmt(expected.real()) << ',' << fmt(expected.imag()) << ','
       << fmt(out_spec[i].real()) << ',' << fmt(out_spec[i].imag()) << '\n';
  }
  report.check_passed = d.l2 < cfg.oracle.tolerance;
  report.summary = "oracle-check: L2 = " + brief(d.l2) + ", Linf = " + brief(d.linf) + " over " +
                   std::to_string(d.n) + " frequencies (tolerance " + brief(cfg.oracle.tolerance) +
                   "): " + (report.check_passed ? "pass" : "FAIL");
  return os.str();
}

}  // namespace

RunReport run(const RunConfig &cfg, const RunOptions &opts)
{
  const std::string name = cfg.output.empty() ? to_string(cfg.scenario) + ".csv" : cfg.output;
  const fs::path csv = fs::path(opts.out_dir) / name;
  fs::path meta = csv;
  meta.replace_extension(".meta.json");
  for (const auto &p : {csv, meta})
  {
    if (!opts.force && fs::exists(p))
    {
      throw IoError("'" + p.string() + "' exists; pass --force to overwrite");
    }
  }

  RunReport report;
  std::string text;
  std::size_t rows = 0;
  switch (cfg.scenario)
  {
  case Scenario::Reflection:
    text = run_reflection(cfg, report);
    rows = cfg.spectrum.n_omega;
    break;
  case Scenario::OracleCheck:
    text = run_oracle(cfg, report);
    rows = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) - 1;
    break;
  default:
  {
    const SweepTable table = run_sweep(cfg, opts.threads);
    std::ostringstream os;
    write_sweep_csv(os, table);
    text = os.str();
    rows = table.rows.size();
    double best = std::numeric_limits<double>::infinity();
    for (const auto &r : table.rows)
    {
      best = std::min(best, r.result.outcome.error);
    }
    report.summary = to_string(cfg.scenario) + ": " + std::to_string(rows) +
                     " points, minimum error " + brief(best);
    break;
  }
  }

  nlohmann::ordered_json m;
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(config_hash(cfg)));
  m["scenario"] = to_string(cfg.scenario);
  m["version"] = version_string();
  m["config_hash"] = hash;
  m["csv"] = csv.filename().string();
  m["rows"] = rows;
  m["config"] = nlohmann::ordered_json::parse(dump_config(cfg));

  fs::create_directories(csv.parent_path().empty() ? fs::path(".") : csv.parent_path());
  write_atomically(csv.string(), text, opts.force);
  write_atomically(meta.string(), m.dump(2) + "\n", opts.force);
  report.files = {csv.string(), meta.string()};
  return report;
}

}  // namespace rydphase
