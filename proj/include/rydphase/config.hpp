// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rydphase/cqed.hpp"
#include "rydphase/ensemble.hpp"
#include "rydphase/optimizer.hpp"
#include "rydphase/params.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rydphase
{

enum class Scenario
{
  Reflection,
  GateError,
  Fig2a,
  Fig2b,
  Fig3,
  Fig4,
  Fig5,
  OracleCheck
};

enum class Backend
{
  Atomic,
  Cqed,
  Empty
};

// How the qubit dressing is specified. Theta uses epsilon = |Delta| tan(2 theta) / 2; Population
// applies the role swap above 1/2.
enum class DressingMode
{
  Epsilon,
  Population,
  Theta
};

std::string to_string(Scenario s);
std::string to_string(Backend b);
std::string to_string(DressingMode m);
std::string to_string(Geometry g);
std::string to_string(Scale s);

struct DressingConfig
{
  DressingMode mode = DressingMode::Epsilon;
  double value = 0.0;  // population or angle; unused for Epsilon
  bool operator==(const DressingConfig &) const = default;
};

struct PacketConfig
{
  double bandwidth = 0.1;
  double omega_center = 0.0;
  std::size_t n_samples = 1024;
  double window_ratio = 10.0;
  bool operator==(const PacketConfig &) const = default;
};

struct EnsembleConfig
{
  Geometry geometry = Geometry::FullCloud;
  double r_min = 0.5;  // cloud
  double r_max = 20.0;
  double r_center = 5.0;  // shell
  double width = 1.0;
  int n_bins = 256;
  bool operator==(const EnsembleConfig &) const = default;
};

struct GateConfig
{
  double phi = 3.14159265358979323846;
  double T_gate = -1.0;  // negative: packet window
  bool operator==(const GateConfig &) const = default;
};

struct SpectrumConfig
{
  double omega_min = -100.0;
  double omega_max = 100.0;
  std::size_t n_omega = 2001;
  int qubit = 1;
  bool operator==(const SpectrumConfig &) const = default;
};

struct OracleConfig
{
  double tolerance = 1e-5;
  double dt = 0.0;
  double settle_time = 0.0;
  bool operator==(const OracleConfig &) const = default;
};

using NamedValues = std::vector<std::pair<std::string, double>>;

struct SweepCase
{
  std::string label;
  NamedValues set;  // applied in order before the grid value
  std::optional<std::vector<FreeParameter>> free;
  std::optional<DressingConfig> dressing;
  std::optional<EnsembleConfig> ensemble;
  std::string seed_from;  // label of a case whose optimum seeds this one
  bool operator==(const SweepCase &) const = default;
};

struct SweepConfig
{
  std::string grid_name;     // empty: a single point
  std::vector<double> grid;
  std::vector<SweepCase> cases;  // empty: one unnamed case
  std::vector<FreeParameter> free;
  int starts = 4;
  double tol = 1e-10;
  double x_tol = 1e-7;
  int max_evals = 400;
  int refine = 0;
  // Maximum number of passes in which every grid point is re-descended from the optima of its
  // grid neighbours in the same case; stops early once a pass improves nothing.
  int cross_seed = 0;
  // Start points added to every grid point's search; free parameters left out start at the
  // middle of their range (geometric middle for log scales).
  std::vector<NamedValues> extra_starts;
  bool operator==(const SweepConfig &) const = default;
};

struct RunConfig
{
  Scenario scenario = Scenario::GateError;
  Backend backend = Backend::Atomic;
  SystemParams params;
  CqedParams cqed;
  double qubit_lifetime = 0.0;  // cQED; > 0 derives Gamma1..3
  DressingConfig dressing;
  PacketConfig packet;
  EnsembleConfig ensemble;
  GateConfig gate;
  SpectrumConfig spectrum;
  OracleConfig oracle;
  SweepConfig sweep;
  std::string output;
  bool operator==(const RunConfig &) const = default;
};

// Errors cite the offending key, or the line and column of a syntax error.
RunConfig parse_config(const std::string &json_text);
RunConfig load_config(const std::string &path);
std::string dump_config(const RunConfig &cfg);

// FNV-1a over the canonical dump.
std::uint64_t config_hash(const RunConfig &cfg);

}  // namespace rydphase
