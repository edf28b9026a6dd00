// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rydphase/ensemble.hpp"
#include "rydphase/params.hpp"
#include "rydphase/spectral.hpp"
#include "rydphase/wavepacket.hpp"

#include <Eigen/Core>

#include <ostream>
#include <string>

namespace rydphase
{

struct GateOutcome
{
  cplx T0;
  cplx T1;
  double eta = 1.0;
  double phi = 0.0;
  double error = 0.0;
};

// T = Int dw |beta~_in(w)|^2 conj(R(w)), trapezoidal on the packet grid. The spectrum grid must
// be a contiguous run of packet grid points holding all but 1e-12 of the packet norm.
cplx overlap(const Wavepacket &packet, const ReflectionSpectrum &spectrum);

// Survival amplitude of the dressed qubit, exp(-gamma T sin^2(theta) / 2).
double eta(double gamma_q, double T_gate, double theta);

// State-averaged error of the controlled phase phi applied to |0_q 1_ph>.
double gate_error(cplx T0, cplx T1, double eta, double phi);

// (Tr(M M^dag) + |Tr M|^2) / 20 for the 4x4 overlap matrix of target and obtained evolutions.
double gate_fidelity_matrix(const Eigen::MatrixXcd &M);

struct GateOptions
{
  double phi = 3.14159265358979323846;
  double T_gate = -1.0;  // negative: use the packet window
};

GateOutcome evaluate_gate(const SystemParams &params, const DressedQubit &dq,
                          const AncillaEnsemble &ens, const Wavepacket &packet,
                          const GateOptions &opts = {});

std::string gate_outcome_header();
std::string gate_outcome_row(const GateOutcome &g);

}  // namespace rydphase
