// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#include "rydphase/config.hpp"

#include "rydphase/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace rydphase
{

using ojson = nlohmann::ordered_json;

namespace
{

template <typename E>
struct Names
{
  std::vector<std::pair<E, const char *>> table;
  std::string str(E v) const
  {
    for (const auto &[e, n] : table)
    {
      if (e == v)
      {
        return n;
      }
    }
    throw InvalidArgument("unnamed enumeration value");
  }
  E parse(const std::string &s, const std::string &key) const
  {
    std::string options;
    for (const auto &[e, n] : table)
    {
      if (s == n)
      {
        return e;
      }
      options += (options.empty() ? "" : ", ") + std::string(n);
    }
    throw ConfigError("key '" + key + "': '" + s + "' is not one of " + options);
  }
};

const Names<Scenario> kScenarios{{{Scenario::Reflection, "reflection"},
                                  {Scenario::GateError, "gate-error"},
                                  {Scenario::Fig2a, "fig2a"},
                                  {Scenario::Fig2b, "fig2b"},
                                  {Scenario::Fig3, "fig3"},
                                  {Scenario::Fig4, "fig4"},
                                  {Scenario::Fig5, "fig5"},
                                  {Scenario::OracleCheck, "oracle-check"}}};
const Names<Backend> kBackends{
  {{Backend::Atomic, "atomic"}, {Backend::Cqed, "cqed"}, {Backend::Empty, "empty"}}};
const Names<DressingMode> kDressing{{{DressingMode::Epsilon, "epsilon"},
                                     {DressingMode::Population, "population"},
                                     {DressingMode::Theta, "theta"}}};
const Names<Geometry> kGeometry{{{Geometry::FullCloud, "cloud"}, {Geometry::Shell, "shell"}}};
const Names<Scale> kScale{{{Scale::Linear, "linear"}, {Scale::Log, "log"}}};

// Walks one JSON object, remembering which keys were consumed so leftovers can be reported.
class Section
{
public:
  Section(const ojson &j, std::string path) : j_(j), path_(std::move(path))
  {
    if (!j_.is_object())
    {
      throw ConfigError("key '" + path_ + "' must be an object");
    }
  }

  std::string key(const std::string &k) const { return path_.empty() ? k : path_ + "." + k; }

  const ojson *find(const std::string &k)
  {
    seen_.insert(k);
    auto it = j_.find(k);
    return it == j_.end() ? nullptr : &*it;
  }

  void number(const std::string &k, double &out)
  {
    if (const ojson *v = find(k))
    {
      if (!v->is_number())
      {
        throw ConfigError("key '" + key(k) + "' must be a number");
      }
      out = v->get<double>();
    }
  }

  template <typename I>
  void integer(const std::string &k, I &out)
  {
    if (const ojson *v = find(k))
    {
      if (!v->is_number_integer() || v->get<long long>() < 0)
      {
        throw ConfigError("key '" + key(k) + "' must be a non-negative integer");
      }
      out = static_cast<I>(v->get<long long>());
    }
  }

  void string(const std::string &k, std::string &out)
  {
    if (const ojson *v = find(k))
    {
      if (!v->is_string())
      {
        throw ConfigError("key '" + key(k) + "' must be a string");
      }
      out = v->get<std::string>();
    }
  }

  template <typename E>
  void enumeration(const std::string &k, const Names<E> &names, E &out)
  {
    std::string s;
    if (find(k))
    {
      string(k, s);
      out = names.parse(s, key(k));
    }
  }

  void finish() const
  {
    for (const auto &[k, v] : j_.items())
    {
      if (!seen_.count(k))
      {
        throw ConfigError("unknown key '" + key(k) + "'");
      }
    }
  }

private:
  const ojson &j_;
  std::string path_;
  std::set<std::string> seen_;
};

DressingConfig read_dressing(const ojson &j, const std::string &path)
{
  DressingConfig d;
  Section s(j, path);
  s.enumeration("mode", kDressing, d.mode);
  s.number("value", d.value);
  s.finish();
  return d;
}

EnsembleConfig read_ensemble(const ojson &j, const std::string &path)
{
  EnsembleConfig e;
  Section s(j, path);
  s.enumeration("geometry", kGeometry, e.geometry);
  s.number("r_min", e.r_min);
  s.number("r_max", e.r_max);
  s.number("r_center", e.r_center);
  s.number("width", e.width);
  s.integer("n_bins", e.n_bins);
  s.finish();
  return e;
}

std::vector<FreeParameter> read_free(const ojson &j, const std::string &path)
{
  if (!j.is_array())
  {
    throw ConfigError("key '" + path + "' must be an array");
  }
  std::vector<FreeParameter> out;
  for (std::size_t i = 0; i < j.size(); ++i)
  {
    FreeParameter f;
    Section s(j[i], path + "[" + std::to_string(i) + "]");
    s.string("name", f.name);
    s.number("lower", f.lower);
    s.number("upper", f.upper);
    s.enumeration("scale", kScale, f.scale);
    s.finish();
    if (f.name.empty())
    {
      throw ConfigError("key '" + s.key("name") + "' is required");
    }
    if (!(f.upper > f.lower))
    {
      throw ConfigError("key '" + path + "[" + std::to_string(i) + "]': upper must exceed lower");
    }
    out.push_back(f);
  }
  return out;
}

NamedValues read_named(const ojson &j, const std::string &path)
{
  if (!j.is_object())
  {
    throw ConfigError("key '" + path + "' must be an object");
  }
  NamedValues out;
  for (const auto &[k, v] : j.items())
  {
    if (!v.is_number())
    {
      throw ConfigError("key '" + path + "." + k + "' must be a number");
    }
    out.emplace_back(k, v.get<double>());
  }
  return out;
}

std::string section_text(const ojson &j, const std::string &path)
{
  if (!j.is_object())
  {
    throw ConfigError("key '" + path + "' must be an object");
  }
  return j.dump();
}

ojson write_dressing(const DressingConfig &d)
{
  return {{"mode", kDressing.str(d.mode)}, {"value", d.value}};
}

ojson write_ensemble(const EnsembleConfig &e)
{
  return {{"geometry", kGeometry.str(e.geometry)},
          {"r_min", e.r_min},
          {"r_max", e.r_max},
          {"r_center", e.r_center},
          {"width", e.width},
          {"n_bins", e.n_bins}};
}

ojson write_free(const std::vector<FreeParameter> &free)
{
  ojson a = ojson::array();
  for (const auto &f : free)
  {
    a.push_back(
      {{"name", f.name}, {"lower", f.lower}, {"upper", f.upper}, {"scale", kScale.str(f.scale)}});
  }
  return a;
}

Backend default_backend(Scenario s) { return s == Scenario::Fig5 ? Backend::Cqed : Backend::Atomic; }

void validate(const RunConfig &cfg)
{
  if (cfg.packet.n_samples < 1024 || (cfg.packet.n_samples & (cfg.packet.n_samples - 1)))
  {
    throw ConfigError("key 'packet.n_samples' must be a power of two >= 1024");
  }
  if (!(cfg.packet.bandwidth > 0.0))
  {
    throw ConfigError("key 'packet.bandwidth' must be > 0");
  }
  if (!(cfg.packet.window_ratio >= 8.0))
  {
    throw ConfigError("key 'packet.window_ratio' must be >= 8");
  }
  if (cfg.spectrum.qubit != 0 && cfg.spectrum.qubit != 1)
  {
    throw ConfigError("key 'spectrum.qubit' must be 0 or 1");
  }
  if (cfg.spectrum.n_omega < 2 || !(cfg.spectrum.omega_max > cfg.spectrum.omega_min))
  {
    throw ConfigError("key 'spectrum': need n_omega >= 2 and omega_max > omega_min");
  }
  if (!(cfg.oracle.tolerance > 0.0))
  {
    throw ConfigError("key 'oracle.tolerance' must be > 0");
  }
  if (cfg.sweep.starts < 1 || cfg.sweep.max_evals < 1)
  {
    throw ConfigError("key 'sweep': starts and max_evals must be >= 1");
  }
  if (cfg.sweep.refine < 0 || cfg.sweep.cross_seed < 0)
  {
    throw ConfigError("key 'sweep': refine and cross_seed must be >= 0");
  }
  if (cfg.sweep.grid_name.empty() != cfg.sweep.grid.empty())
  {
    throw ConfigError("key 'sweep': grid_name and grid must be given together");
  }
  std::set<std::string> labels;
  for (const auto &c : cfg.sweep.cases)
  {
    if (!labels.insert(c.label).second)
    {
      throw ConfigError("key 'sweep.cases': duplicate label '" + c.label + "'");
    }
  }
  for (const auto &c : cfg.sweep.cases)
  {
    if (c.seed_from.empty())
    {
      continue;
    }
    auto it = std::find_if(cfg.sweep.cases.begin(), cfg.sweep.cases.end(),
                           [&](const SweepCase &o) { return o.label == c.seed_from; });
    if (it == cfg.sweep.cases.end() || !it->seed_from.empty())
    {
      throw ConfigError("key 'sweep.cases': case '" + c.label +
                        "' must be seeded from an unseeded case");
    }
  }
  for (std::size_t i = 0; i < cfg.sweep.extra_starts.size(); ++i)
  {
    for (const auto &[name, value] : cfg.sweep.extra_starts[i])
    {
      auto is_free = [&](const std::vector<FreeParameter> &free) {
        return std::any_of(free.begin(), free.end(),
                           [&](const FreeParameter &f) { return f.name == name; });
      };
      bool found = is_free(cfg.sweep.free);
      for (const auto &c : cfg.sweep.cases)
      {
        found = found || (c.free && is_free(*c.free));
      }
      if (!found)
      {
        throw ConfigError("key 'sweep.extra_starts[" + std::to_string(i) + "]': '" + name +
                          "' is not a free parameter");
      }
    }
  }
  cfg.params.validate();
  cfg.cqed.validate();
}

std::size_t line_of(const std::string &text, std::size_t byte, std::size_t &column)
{
  const std::size_t end = std::min(byte, text.size());
  std::size_t line = 1, start = 0;
  for (std::size_t i = 0; i + 1 < end; ++i)
  {
    if (text[i] == '\n')
    {
      ++line;
      start = i + 1;
    }
  }
  column = end - start;
  return line;
}

}  // namespace

std::string to_string(Scenario s) { return kScenarios.str(s); }
std::string to_string(Backend b) { return kBackends.str(b); }
std::string to_string(DressingMode m) { return kDressing.str(m); }
std::string to_string(Geometry g) { return kGeometry.str(g); }
std::string to_string(Scale s) { return kScale.str(s); }

RunConfig parse_config(const std::string &json_text)
{
  ojson j;
  try
  {
    j = ojson::parse(json_text);
  }
  catch (const nlohmann::json::parse_error &e)
  {
    std::size_t col = 0;
    const std::size_t line = line_of(json_text, e.byte, col);
    throw ConfigError("config syntax error at line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }
  RunConfig cfg;
  Section top(j, "");
  if (!top.find("scenario"))
  {
    throw ConfigError("key 'scenario' is required");
  }
  top.enumeration("scenario", kScenarios, cfg.scenario);
  cfg.backend = default_backend(cfg.scenario);
  top.enumeration("backend", kBackends, cfg.backend);
  if (const ojson *v = top.find("params"))
  {
    try
    {
      cfg.params = parse_params(section_text(*v, "params"));
    }
    catch (const Error &e)
    {
      throw ConfigError(std::string("key 'params': ") + e.what());
    }
  }
  if (const ojson *v = top.find("cqed"))
  {
    try
    {
      cfg.cqed = parse_cqed_params(section_text(*v, "cqed"));
    }
    catch (const Error &e)
    {
      throw ConfigError(std::string("key 'cqed': ") + e.what());
    }
  }
  top.number("qubit_lifetime", cfg.qubit_lifetime);
  if (const ojson *v = top.find("dressing"))
  {
    cfg.dressing = read_dressing(*v, "dressing");
  }
  if (const ojson *v = top.find("packet"))
  {
    Section s(*v, "packet");
    s.number("bandwidth", cfg.packet.bandwidth);
    s.number("omega_center", cfg.packet.omega_center);
    s.integer("n_samples", cfg.packet.n_samples);
    s.number("window_ratio", cfg.packet.window_ratio);
    s.finish();
  }
  if (const ojson *v = top.find("ensemble"))
  {
    cfg.ensemble = read_ensemble(*v, "ensemble");
  }
  if (const ojson *v = top.find("gate"))
  {
    Section s(*v, "gate");
    s.number("phi", cfg.gate.phi);
    s.number("T_gate", cfg.gate.T_gate);
    s.finish();
  }
  if (const ojson *v = top.find("spectrum"))
  {
    Section s(*v, "spectrum");
    s.number("omega_min", cfg.spectrum.omega_min);
    s.number("omega_max", cfg.spectrum.omega_max);
    s.integer("n_omega", cfg.spectrum.n_omega);
    s.integer("qubit", cfg.spectrum.qubit);
    s.finish();
  }
  if (const ojson *v = top.find("oracle"))
  {
    Section s(*v, "oracle");
    s.number("tolerance", cfg.oracle.tolerance);
    s.number("dt", cfg.oracle.dt);
    s.number("settle_time", cfg.oracle.settle_time);
    s.finish();
  }
  if (const ojson *v = top.find("sweep"))
  {
    Section s(*v, "sweep");
    auto &sw = cfg.sweep;
    s.string("grid_name", sw.grid_name);
    if (const ojson *g = s.find("grid"))
    {
      if (!g->is_array())
      {
        throw ConfigError("key 'sweep.grid' must be an array");
      }
      for (std::size_t i = 0; i < g->size(); ++i)
      {
        if (!(*g)[i].is_number())
        {
          throw ConfigError("key 'sweep.grid[" + std::to_string(i) + "]' must be a number");
        }
        sw.grid.push_back((*g)[i].get<double>());
      }
    }
    if (const ojson *f = s.find("free"))
    {
      sw.free = read_free(*f, "sweep.free");
    }
    s.integer("starts", sw.starts);
    s.number("tol", sw.tol);
    s.number("x_tol", sw.x_tol);
    s.integer("max_evals", sw.max_evals);
    s.integer("refine", sw.refine);
    s.integer("cross_seed", sw.cross_seed);
    if (const ojson *x = s.find("extra_starts"))
    {
      if (!x->is_array())
      {
        throw ConfigError("key 'sweep.extra_starts' must be an array");
      }
      for (std::size_t i = 0; i < x->size(); ++i)
      {
        sw.extra_starts.push_back(
          read_named((*x)[i], "sweep.extra_starts[" + std::to_string(i) + "]"));
      }
    }
    if (const ojson *cs = s.find("cases"))
    {
      if (!cs->is_array())
      {
        throw ConfigError("key 'sweep.cases' must be an array");
      }
      for (std::size_t i = 0; i < cs->size(); ++i)
      {
        const std::string path = "sweep.cases[" + std::to_string(i) + "]";
        SweepCase c;
        Section cs_i((*cs)[i], path);
        cs_i.string("label", c.label);
        if (const ojson *v2 = cs_i.find("set"))
        {
          c.set = read_named(*v2, path + ".set");
        }
        if (const ojson *v2 = cs_i.find("free"))
        {
          c.free = read_free(*v2, path + ".free");
        }
        if (const ojson *v2 = cs_i.find("dressing"))
        {
          c.dressing = read_dressing(*v2, path + ".dressing");
        }
        if (const ojson *v2 = cs_i.find("ensemble"))
        {
          c.ensemble = read_ensemble(*v2, path + ".ensemble");
        }
        cs_i.string("seed_from", c.seed_from);
        cs_i.finish();
        sw.cases.push_back(std::move(c));
      }
    }
    s.finish();
  }
  top.string("output", cfg.output);
  top.finish();
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw IoError("cannot open config file '" + path + "'");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const RunConfig &cfg)
{
  ojson j;
  j["scenario"] = kScenarios.str(cfg.scenario);
  j["backend"] = kBackends.str(cfg.backend);
  j["params"] = ojson::parse(dump_params(cfg.params));
  j["cqed"] = ojson::parse(dump_cqed_params(cfg.cqed));
  j["qubit_lifetime"] = cfg.qubit_lifetime;
  j["dressing"] = write_dressing(cfg.dressing);
  j["packet"] = {{"bandwidth", cfg.packet.bandwidth},
                 {"omega_center", cfg.packet.omega_center},
                 {"n_samples", cfg.packet.n_samples},
                 {"window_ratio", cfg.packet.window_ratio}};
  j["ensemble"] = write_ensemble(cfg.ensemble);
  j["gate"] = {{"phi", cfg.gate.phi}, {"T_gate", cfg.gate.T_gate}};
  j["spectrum"] = {{"omega_min", cfg.spectrum.omega_min},
                   {"omega_max", cfg.spectrum.omega_max},
                   {"n_omega", cfg.spectrum.n_omega},
                   {"qubit", cfg.spectrum.qubit}};
  j["oracle"] = {{"tolerance", cfg.oracle.tolerance},
                 {"dt", cfg.oracle.dt},
                 {"settle_time", cfg.oracle.settle_time}};
  const auto &sw = cfg.sweep;
  ojson s;
  s["grid_name"] = sw.grid_name;
  s["grid"] = sw.grid;
  s["free"] = write_free(sw.free);
  s["starts"] = sw.starts;
  s["tol"] = sw.tol;
  s["x_tol"] = sw.x_tol;
  s["max_evals"] = sw.max_evals;
  s["refine"] = sw.refine;
  s["cross_seed"] = sw.cross_seed;
  s["extra_starts"] = ojson::array();
  for (const auto &start : sw.extra_starts)
  {
    ojson e = ojson::object();
    for (const auto &[k, v] : start)
    {
      e[k] = v;
    }
    s["extra_starts"].push_back(std::move(e));
  }
  s["cases"] = ojson::array();
  for (const auto &c : sw.cases)
  {
    ojson cj;
    cj["label"] = c.label;
    cj["set"] = ojson::object();
    for (const auto &[k, v] : c.set)
    {
      cj["set"][k] = v;
    }
    if (c.free)
    {
      cj["free"] = write_free(*c.free);
    }
    if (c.dressing)
    {
      cj["dressing"] = write_dressing(*c.dressing);
    }
    if (c.ensemble)
    {
      cj["ensemble"] = write_ensemble(*c.ensemble);
    }
    cj["seed_from"] = c.seed_from;
    s["cases"].push_back(std::move(cj));
  }
  j["sweep"] = std::move(s);
  j["output"] = cfg.output;
  return j.dump(2) + "\n";
}

std::uint64_t config_hash(const RunConfig &cfg)
{
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : dump_config(cfg))
  {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace rydphase
