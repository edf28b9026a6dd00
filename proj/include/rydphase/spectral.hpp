// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rydphase/ensemble.hpp"
#include "rydphase/params.hpp"
#include "rydphase/wavepacket.hpp"

#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

namespace rydphase
{

// Output convention shared by every solver: the cavity is driven by +sqrt(kappa) beta_in and
// beta_out = beta_in - sqrt(kappa) C, so the empty cavity reflects with
// R(w) = (w + i kappa/2) / (w - i kappa/2) and R(0) = -1.
struct ReflectionSpectrum
{
  std::vector<double> omega_grid;
  std::vector<cplx> R;
  std::vector<cplx> C1;        // cavity amplitude in the occupied qubit branch, per unit beta_in
  std::vector<cplx> C2;        // cavity amplitude in the other branch
  std::vector<double> leak_2;  // kappa |C2|^2, norm leaving through the other branch
  std::vector<std::size_t> singular;  // grid indices where the cavity 2x2 was ill-conditioned

  std::size_t size() const { return omega_grid.size(); }
};

struct BinResponse
{
  double radius = 0.0;
  cplx ratio;  // g A1(w) / C1(w) for one atom of the bin
};

inline constexpr double kSingularCondition = 1e12;

ReflectionSpectrum reflect_empty(double kappa, std::span<const double> omega_grid);

// Closed-form reflection for the qubit in |0_q> (ancillas see an unperturbed EIT ladder).
ReflectionSpectrum reflect_q0(const SystemParams &params, double G2,
                              std::span<const double> omega_grid);

// Full frequency-domain solve with the dressed qubit, by block elimination per frequency:
// per-bin Rydberg pair (B1, B2), then intermediate pair (A1, A2) in terms of (C1, C2), then the
// weighted sums close a 2x2 system for the cavity amplitudes.
ReflectionSpectrum reflect_q1(const SystemParams &params, const DressedQubit &dq,
                              const AncillaEnsemble &ens, std::span<const double> omega_grid);

std::vector<BinResponse> bin_responses(const SystemParams &params, const DressedQubit &dq,
                                       const AncillaEnsemble &ens, double omega);

// Determinant of the per-bin Rydberg-pair 2x2 block at frequency omega.
cplx rydberg_pair_determinant(const SystemParams &params, const DressedQubit &dq, double B,
                              double omega);

// Columns omega, re_R, im_R, abs_R2, leak_2.
void write_spectrum_csv(std::ostream &os, const ReflectionSpectrum &spec);

}  // namespace rydphase
