// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rydphase/params.hpp"

#include <ostream>
#include <span>
#include <utility>
#include <vector>

namespace rydphase
{

// Group of ancilla atoms sharing one radius, hence one blockade shift.
struct AncillaBin
{
  double radius = 0.0;  // um
  double weight = 0.0;  // expected atom count
  double B = 0.0;       // blockade shift, 1/us
  double g = 0.0;       // cavity coupling per atom, 1/us
};

enum class Geometry
{
  FullCloud,
  Shell
};

struct AncillaEnsemble
{
  std::vector<AncillaBin> bins;  // ascending radius
  double G2 = 0.0;               // sum of weight * g^2
  Geometry geometry = Geometry::FullCloud;
  double r_center = 0.0;  // shells only
  double width = 0.0;     // shells only

  double total_weight() const;
};

// B = 10^3 C3 / r^3 in 1/us for C3 in GHz um^3 and r in um.
double blockade_strength(double C3, double r);

// Power-law estimates C3 = -300 n^4 Hz um^3 and gamma = n^-3 GHz, returned as
// (C3 in GHz um^3, gamma in 1/us).
std::pair<double, double> rydberg_scaling(double n);

// Expected number of atoms of the Gaussian density rho0 exp(-r^2 / 2 Rc^2) between radii a < b.
double radial_population(double rho0, double Rc, double a, double b);

// Bins with the given radial edges; the representative radius of each bin is its midpoint
// (or geometric midpoint when `log_center` is set).
AncillaEnsemble bins_from_edges(const SystemParams &params, std::span<const double> edges,
                                bool log_center);

// Full cloud between r_min and r_max, bins uniform in log r. Requires n_bins >= 8.
AncillaEnsemble build_cloud(const SystemParams &params, double r_min, double r_max, int n_bins);

// Atoms with r in [r_center - width/2, r_center + width/2], bins uniform in r.
AncillaEnsemble build_shell(const SystemParams &params, double r_center, double width,
                            int n_bins);

// Columns radius, weight, B, g.
void write_ensemble_csv(std::ostream &os, const AncillaEnsemble &ens);

}  // namespace rydphase
