// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rydphase/config.hpp"
#include "rydphase/fidelity.hpp"

#include <string>
#include <vector>

namespace rydphase
{

// Everything one gate evaluation depends on.
struct PointState
{
  Backend backend = Backend::Atomic;
  SystemParams params;
  CqedParams cqed;
  double qubit_lifetime = 0.0;
  DressingConfig dressing;
  PacketConfig packet;
  EnsembleConfig ensemble;
  GateConfig gate;
  double rydberg_n = 0.0;  // 0: C3 and gamma_q taken from params
};

PointState base_state(const RunConfig &cfg);

// Named quantities understood by set_value / get_value. Atomic backend: every SystemParams field,
// abs_Delta (keeps the sign of Delta), pop, theta (angle magnitude, sign from Delta), n (Rydberg scaling of C3 and gamma_q),
// bandwidth, omega_center, window_ratio, phi, T_gate, r_center, width, r_min, r_max. cQED backend:
// kappa, g, Omega, eps, Gamma1..3, alpha1, alpha2, qubit_lifetime, bandwidth, omega_center,
// window_ratio, phi.
void set_value(PointState &s, const std::string &name, double value);
double get_value(const PointState &s, const std::string &name);

// The qubit dressing implied by the state (role swap applied above population 1/2).
DressedQubit state_dressing(const PointState &s);

struct PointResult
{
  PointState state;
  GateOutcome outcome;
  DressedQubit dressed;  // atomic backend only
  double G2 = 0.0;
  double sigma_T = 0.0;
  double T_window = 0.0;
  double sigma_omega = 0.0;
};

PointResult evaluate_point(const PointState &s);

struct SweepRow
{
  std::string label;
  double grid_value = 0.0;
  std::vector<std::string> optimized;
  std::size_t evaluations = 0;
  PointResult result;
};

struct SweepTable
{
  Backend backend = Backend::Atomic;
  std::string grid_name;
  std::vector<SweepRow> rows;  // case-major, grid order within a case

  // Rows of one case in grid order.
  std::vector<const SweepRow *> curve(const std::string &label) const;
};

// Optimizes every (case, grid point) pair; rows are assembled in a fixed order, so the result is
// independent of the thread count.
SweepTable run_sweep(const RunConfig &cfg, int threads);

void write_sweep_csv(std::ostream &os, const SweepTable &table);

struct RunReport
{
  bool check_passed = true;  // oracle-check only
  std::string summary;
  std::vector<std::string> files;
};

struct RunOptions
{
  std::string out_dir = ".";
  int threads = 1;
  bool force = false;
};

// Writes the scenario's CSV plus a metadata file next to it. Refuses to overwrite unless forced.
RunReport run(const RunConfig &cfg, const RunOptions &opts);

// Writes text to path through a temporary file and a rename.
void write_atomically(const std::string &path, const std::string &text, bool force);

std::string version_string();

}  // namespace rydphase
