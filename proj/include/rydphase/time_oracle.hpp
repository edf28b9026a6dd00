// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rydphase/ensemble.hpp"
#include "rydphase/params.hpp"
#include "rydphase/spectral.hpp"
#include "rydphase/wavepacket.hpp"

#include <ostream>
#include <vector>

namespace rydphase
{

inline constexpr std::size_t kOracleMaxBins = 64;

// Time-domain amplitudes from direct integration of the single-excitation Schroedinger
// equations. Each bin is represented by its collective (symmetric) excitation, which couples to
// the cavity with g sqrt(weight).
struct TimeTrace
{
  std::vector<double> t_grid;
  std::vector<cplx> beta_in;
  std::vector<cplx> beta_out;
  std::vector<cplx> C1, C2;
  // [bin][sample], collective amplitudes
  std::vector<std::vector<cplx>> A1, A2, B1, B2;
  double input_norm = 0.0;   // Int |beta_in|^2 dt
  double output_norm = 0.0;  // Int |beta_out|^2 dt
  double leak_norm = 0.0;    // Int kappa |C2|^2 dt, the output of the other qubit branch
  double final_system_norm = 0.0;
  double dt = 0.0;
  double omega_center = 0.0;  // packet carrier; spectra are demodulated by it
};

struct OracleOptions
{
  double dt = 0.0;            // 0 picks 0.02 / (fastest rate)
  double settle_time = 0.0;   // extra integration after the packet window; 0 picks a default
  std::size_t record_stride = 0;  // record every k-th step; 0 records on the packet's dt
  bool record_atoms = false;
};

// Largest rate entering the equations; the integrator requires dt < 0.1 / max_rate.
double oracle_max_rate(const SystemParams &params, const DressedQubit &dq,
                       const AncillaEnsemble &ens);

// Fixed-step classical Runge-Kutta integration driven by the packet's continuous envelope.
TimeTrace integrate(const SystemParams &params, const DressedQubit &dq, const AncillaEnsemble &ens,
                    const Wavepacket &packet, const OracleOptions &opts = {});

struct Discrepancy
{
  double l2 = 0.0;
  double linf = 0.0;
  std::size_t n = 0;
};

// Frequency grid of the trace's output record (ascending).
std::vector<double> trace_frequency_grid(const TimeTrace &trace);
std::pair<std::vector<double>, std::vector<cplx>> trace_output_spectrum(const TimeTrace &trace);
std::pair<std::vector<double>, std::vector<cplx>> trace_input_spectrum(const TimeTrace &trace);

// Compares the transform of beta_out(t) with R(w) beta~_in(w), both on the trace's grid.
// `spectrum` must be evaluated on trace_frequency_grid(trace).
Discrepancy compare_spectral(const TimeTrace &trace, const ReflectionSpectrum &spectrum);

void write_trace_csv(std::ostream &os, const TimeTrace &trace);

}  // namespace rydphase
