// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <ostream>
#include <vector>

namespace rydphase
{

using cplx = std::complex<double>;

// Sampled single-photon envelope and its spectrum.
//
// Fourier convention: beta(t) = (2 pi)^-1/2 Int dw e^{+i w t} beta~(w), so a spectral component
// at detuning w evolves as e^{+i w t}. The spectrum is sampled on the discrete-transform grid of
// the zero-padded record and normalised so that sum |beta~|^2 dw = 1.
inline constexpr double kSupportTail = 1e-13;

struct Wavepacket
{
  std::vector<double> t_grid;
  std::vector<cplx> envelope;
  std::vector<double> omega_grid;  // ascending, uniform
  std::vector<cplx> spectrum;
  double sigma_T = 0.0;
  double sigma_omega = 0.0;
  double T_window = 0.0;
  double omega_center = 0.0;
  double dt = 0.0;
  double d_omega = 0.0;
  double amplitude = 0.0;  // normalisation constant of the envelope

  // Continuous envelope (normalised, carrier included) at arbitrary t.
  cplx envelope_at(double t) const;

  // Indices [first, last) of the shortest contiguous omega range obtained by trimming both
  // tails while each trimmed tail holds less than tail_norm / 2 of the spectral norm.
  std::pair<std::size_t, std::size_t> support(double tail_norm = kSupportTail) const;
  std::vector<double> support_grid(double tail_norm = kSupportTail) const;
};

inline constexpr int kZeroPadding = 4;
inline constexpr double kDefaultWindowRatio = 10.0;

// max{0, A (exp(-(t - T/2)^2 / 2 sigma_T^2) - exp(-T^2 / 8 sigma_T^2))} on [0, T_window], times
// the carrier e^{+i omega_center t} so the spectrum is centred at omega_center.
// Requires T_window >= 8 sigma_T and n_samples a power of two >= 1024.
Wavepacket truncated_gaussian(double sigma_T, double T_window, std::size_t n_samples,
                              double omega_center = 0.0);

// Standard deviation of |beta~(w)|^2 over the grid.
double spectral_std(const std::vector<double> &omega, const std::vector<cplx> &spectrum);

// sigma_T whose packet (window 10 sigma_T) has sigma_omega = target within 1e-3 relative.
double bandwidth_to_sigma_T(double target_bandwidth, std::size_t n_samples = 1024,
                            double window_ratio = kDefaultWindowRatio);

// Packet with the requested bandwidth, window ratio 10.
Wavepacket packet_for_bandwidth(double bandwidth, double omega_center = 0.0,
                                std::size_t n_samples = 1024,
                                double window_ratio = kDefaultWindowRatio);

// Discrete transform of samples on the uniform grid t_k = k dt, in the convention above.
// Returns (omega ascending, spectrum).
std::pair<std::vector<double>, std::vector<cplx>> spectrum_of(const std::vector<cplx> &samples,
                                                              double dt);

void write_envelope_csv(std::ostream &os, const Wavepacket &wp);
void write_spectrum_csv(std::ostream &os, const Wavepacket &wp);

}  // namespace rydphase
