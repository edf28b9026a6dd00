// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#include "rydphase/ensemble.hpp"

#include "rydphase/errors.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>

namespace rydphase
{

namespace
{

// Antiderivative of r^2 exp(-r^2 / 2 s^2).
double gaussian_r2_primitive(double r, double s)
{
  return s * s *
         (-r * std::exp(-r * r / (2.0 * s * s)) +
          s * std::sqrt(std::numbers::pi / 2.0) * std::erf(r / (std::numbers::sqrt2 * s)));
}

}  // namespace

double AncillaEnsemble::total_weight() const
{
  double w = 0.0;
  for (const auto &b : bins)
  {
    w += b.weight;
  }
  return w;
}

double blockade_strength(double C3, double r)
{
  if (!(r > 0.0))
  {
    throw InvalidArgument("blockade_strength: r must be > 0");
  }
  return 1e3 * C3 / (r * r * r);
}

std::pair<double, double> rydberg_scaling(double n)
{
  if (!(n >= 30.0 && n <= 200.0))
  {
    throw InvalidArgument("rydberg_scaling: n must lie in [30, 200]");
  }
  const double n4 = n * n * n * n;
  const double C3 = -300.0 * n4 * 1e-9;      // Hz um^3 -> GHz um^3
  const double gamma_q = 1e3 / (n * n * n);  // n^-3 GHz -> 1/us
  return {C3, gamma_q};
}

double radial_population(double rho0, double Rc, double a, double b)
{
  if (Rc <= 0.0)
  {
    return 0.0;
  }
  return 4.0 * std::numbers::pi * rho0 *
         (gaussian_r2_primitive(b, Rc) - gaussian_r2_primitive(a, Rc));
}

AncillaEnsemble bins_from_edges(const SystemParams &params, std::span<const double> edges,
                                bool log_center)
{
  AncillaEnsemble ens;
  if (edges.size() < 2)
  {
    return ens;
  }
  ens.bins.reserve(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
  {
    const double a = edges[i];
    const double b = edges[i + 1];
    AncillaBin bin;
    bin.radius = log_center ? std::sqrt(a * b) : 0.5 * (a + b);
    bin.weight = radial_population(params.rho0, params.Rc, a, b);
    bin.B = blockade_strength(params.C3, bin.radius);
    bin.g = params.g_single;
    ens.G2 += bin.weight * bin.g * bin.g;
    ens.bins.push_back(bin);
  }
  return ens;
}

AncillaEnsemble build_cloud(const SystemParams &params, double r_min, double r_max, int n_bins)
{
  params.validate();
  if (!(r_min > 0.0) || !(r_max > r_min))
  {
    throw InvalidArgument("build_cloud: need 0 < r_min < r_max");
  }
  if (n_bins < 8)
  {
    throw InvalidArgument("build_cloud: need at least 8 bins");
  }
  std::vector<double> edges(n_bins + 1);
  const double ratio = std::log(r_max / r_min);
  for (int i = 0; i <= n_bins; ++i)
  {
    edges[i] = r_min * std::exp(ratio * i / n_bins);
  }
  edges.back() = r_max;
  AncillaEnsemble ens = bins_from_edges(params, edges, true);
  ens.geometry = Geometry::FullCloud;
  return ens;
}

AncillaEnsemble build_shell(const SystemParams &params, double r_center, double width,
                            int n_bins)
{
  params.validate();
  if (!(width > 0.0))
  {
    throw InvalidArgument("build_shell: width must be > 0");
  }
  if (!(r_center - 0.5 * width > 0.0))
  {
    throw InvalidArgument("build_shell: shell must not reach r = 0");
  }
  if (n_bins < 1)
  {
    throw InvalidArgument("build_shell: need at least one bin");
  }
  std::vector<double> edges(n_bins + 1);
  const double lo = r_center - 0.5 * width;
  for (int i = 0; i <= n_bins; ++i)
  {
    edges[i] = lo + width * i / n_bins;
  }
  AncillaEnsemble ens = bins_from_edges(params, edges, false);
  ens.geometry = Geometry::Shell;
  ens.r_center = r_center;
  ens.width = width;
  return ens;
}

void write_ensemble_csv(std::ostream &os, const AncillaEnsemble &ens)
{
  os << "radius,weight,B,g\n" << std::setprecision(17);
  for (const auto &b : ens.bins)
  {
    os << b.radius << ',' << b.weight << ',' << b.B << ',' << b.g << '\n';
  }
}

}  // namespace rydphase
