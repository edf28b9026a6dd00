// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

namespace rydphase
{

// All rates, detunings and couplings are in 1/us. A value quoted in "MHz" is used with the
// same number in 1/us; no factor 2*pi is inserted anywhere.
struct SystemParams
{
  double kappa = 20.0;     // cavity linewidth
  double Omega = 30.0;     // EIT control Rabi frequency
  double Gamma = 3.0;      // ancilla intermediate-state decay
  double gamma_a = 1e-3;   // ancilla Rydberg decay
  double gamma_q = 1e-3;   // qubit Rydberg decay
  double Delta = 300.0;    // dressing-laser detuning (signed)
  double epsilon = 0.0;    // dressing Rabi frequency
  double C3 = -30.0;       // dipolar coefficient, GHz um^3 (signed)
  double g_single = 0.5;   // per-atom cavity coupling
  double rho0 = 10.0;      // peak density, atoms/um^3
  double Rc = 5.0;         // Gaussian cloud width, um

  // Throws InvalidArgument naming the first offending field.
  void validate() const;

  bool operator==(const SystemParams &) const = default;
};

// Flat key-value JSON object whose keys are the field names above. Unknown keys are rejected;
// missing keys keep their defaults.
SystemParams load_params(const std::string &path);
SystemParams parse_params(const std::string &json_text);
std::string dump_params(const SystemParams &p);

// State of the dressed qubit that is occupied during the reflection.
//
// |occupied> = cos(theta)|1_q> - sin(theta)|2_q>, so ryd_pop = sin^2(theta). `splitting` is the
// energy of the other dressed state relative to the occupied one; its magnitude is delta_bar.
struct DressedQubit
{
  double theta = 0.0;
  double delta_bar = 0.0;
  double ryd_pop = 0.0;
  double splitting = 0.0;
  bool swapped = false;  // occupied state is the Rydberg-like branch

  double sin_theta() const;
  double cos_theta() const;
};

// Dressed state adiabatically connected to |1_q> for the drive (Delta, epsilon). For Delta > 0
// theta lies in [0, pi/4]; for Delta < 0 theta is negative and the state is the upper branch.
DressedQubit dress(double Delta, double epsilon);

// The other dressed eigenstate of the same drive taken as the occupied state.
DressedQubit swap_branch(const DressedQubit &dq);

// Drive strength epsilon giving Rydberg population `target_pop` in the |1_q>-connected branch.
// Requires Delta > 0 and 0 <= target_pop < 1/2.
double dressing_for_population(double Delta, double target_pop);

// Dressed state with Rydberg population `pop` in [0, 1] at detuning Delta (either sign).
// Populations above 1/2 use the Rydberg-like branch of the drive that gives 1 - pop.
DressedQubit dress_for_population(double Delta, double pop);

}  // namespace rydphase
