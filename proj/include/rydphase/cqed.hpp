// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rydphase/fidelity.hpp"
#include "rydphase/spectral.hpp"
#include "rydphase/wavepacket.hpp"

#include <span>
#include <string>

namespace rydphase
{

// Resonator coupled to a four-level ancilla transmon ladder whose |2_a>|1_q> and |3_a>|0_q>
// states are degenerate and coupled by eps.
struct CqedParams
{
  double kappa = 20.0;
  double g = 50.0;
  double Omega = 100.0;
  double eps = 150.0;
  double Gamma1 = 0.0;
  double Gamma2 = 0.0;
  double Gamma3 = 0.0;
  double alpha1 = 300.0;  // anharmonicities; only used for the validity flag
  double alpha2 = 300.0;

  void validate() const;
  // Drives are small enough against the anharmonicities: max(Omega, eps) < min(alpha) / 2.
  bool anharmonic_regime() const;
  bool operator==(const CqedParams &) const = default;
};

// Gamma_i = i / ancilla_lifetime with the ancilla lifetime half the qubit lifetime.
CqedParams cqed_from_qubit_lifetime(double qubit_lifetime_us, const CqedParams &base = CqedParams{});

std::string dump_cqed_params(const CqedParams &p);
CqedParams parse_cqed_params(const std::string &json_text);

ReflectionSpectrum reflect_cqed(const CqedParams &p, int q, std::span<const double> omega_grid);

// eta = 1: qubit decay enters only through the broadened ancilla levels.
GateOutcome cqed_gate_error(const CqedParams &p, const Wavepacket &packet, double phi);

}  // namespace rydphase
