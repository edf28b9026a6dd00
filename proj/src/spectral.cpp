// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#include "rydphase/spectral.hpp"

#include "rydphase/errors.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace rydphase
{

namespace
{

constexpr cplx I{0.0, 1.0};

struct Mat2
{
  cplx a, b, c, d;  // [[a, b], [c, d]]

  cplx det() const { return a * d - b * c; }
  Mat2 adjugate() const { return {d, -b, -c, a}; }
};

// Ratio of largest to smallest singular value.
double condition_number(const Mat2 &m)
{
  const double fro = std::norm(m.a) + std::norm(m.b) + std::norm(m.c) + std::norm(m.d);
  const double det2 = std::norm(m.det());
  const double disc = std::sqrt(std::max(0.0, fro * fro - 4.0 * det2));
  const double s_max = 0.5 * (fro + disc);
  const double s_min = det2 / s_max;
  if (s_min <= 0.0)
  {
    return std::numeric_limits<double>::infinity();
  }
  return std::sqrt(s_max / s_min);
}

// Linear response of one atom of a bin: A = -g K C with K the 2x2 returned here.
struct BinKernel
{
  Mat2 K;
  bool finite = true;
};

BinKernel bin_kernel(const SystemParams &p, const DressedQubit &dq, double B, double omega)
{
  const double s = std::sin(dq.theta);
  const double c = std::cos(dq.theta);
  const double split = dq.splitting;
  // Rydberg pair block
  const Mat2 rb{omega + s * s * B - 0.5 * I * p.gamma_a, c * s * B, c * s * B,
                omega + c * c * B + split - 0.5 * I * p.gamma_a};
  const cplx det_b = rb.det();
  const Mat2 adj_b = rb.adjugate();
  // Intermediate block after eliminating the Rydberg pair, scaled by det_b to stay finite
  // through exact pair resonances:  P = det_b * diag(...) - Omega^2 adj(rb).
  const double om2 = p.Omega * p.Omega;
  const cplx da1 = omega - 0.5 * I * p.Gamma;
  const cplx da2 = omega + split - 0.5 * I * p.Gamma;
  const Mat2 P{det_b * da1 - om2 * adj_b.a, -om2 * adj_b.b, -om2 * adj_b.c,
               det_b * da2 - om2 * adj_b.d};
  const cplx det_p = P.det();
  BinKernel out;
  if (det_p == cplx{})
  {
    out.finite = false;
    return out;
  }
  // K = (A block)^-1 = det_b * P^-1
  const Mat2 adj_p = P.adjugate();
  const cplx f = det_b / det_p;
  out.K = {f * adj_p.a, f * adj_p.b, f * adj_p.c, f * adj_p.d};
  return out;
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string at_omega(double omega)
{
  std::ostringstream os;
  os << std::setprecision(10) << " at omega = " << omega;
  return os.str();
}

}  // namespace

ReflectionSpectrum reflect_empty(double kappa, std::span<const double> omega_grid)
{
  if (!(kappa > 0.0))
  {
    throw InvalidArgument("reflect_empty: kappa must be > 0");
  }
  ReflectionSpectrum out;
  out.omega_grid.assign(omega_grid.begin(), omega_grid.end());
  const std::size_t n = omega_grid.size();
  out.R.resize(n);
  out.C1.resize(n);
  out.C2.assign(n, cplx{});
  out.leak_2.assign(n, 0.0);
  const double sk = std::sqrt(kappa);
  for (std::size_t i = 0; i < n; ++i)
  {
    const double w = omega_grid[i];
    out.R[i] = (w + 0.5 * I * kappa) / (w - 0.5 * I * kappa);
    out.C1[i] = sk / (0.5 * kappa + I * w);
  }
  return out;
}

ReflectionSpectrum reflect_q0(const SystemParams &params, double G2,
                              std::span<const double> omega_grid)
{
  params.validate();
  if (!(G2 >= 0.0))
  {
    throw InvalidArgument("reflect_q0: G2 must be >= 0");
  }
  ReflectionSpectrum out;
  out.omega_grid.assign(omega_grid.begin(), omega_grid.end());
  const std::size_t n = omega_grid.size();
  out.R.resize(n);
  out.C1.resize(n);
  out.C2.assign(n, cplx{});
  out.leak_2.assign(n, 0.0);
  const double kappa = params.kappa;
  const double sk = std::sqrt(kappa);
  const double om2 = params.Omega * params.Omega;
  for (std::size_t i = 0; i < n; ++i)
  {
    const double w = omega_grid[i];
    const cplx dk = 0.5 * kappa + I * w;
    const cplx dG = 0.5 * params.Gamma + I * w;
    const cplx dg = 0.5 * params.gamma_a + I * w;
    // kappa/2 + iw + G^2 / (Gamma/2 + iw + Omega^2 / (gamma/2 + iw)), cleared of inner
    // denominators so the lossless EIT point stays finite.
    const cplx inner = dG * dg + om2;
    const cplx denom = dk * inner + G2 * dg;
    if (denom == cplx{})
    {
      throw NumericalError("reflect_q0: singular response" + at_omega(w));
    }
    out.C1[i] = sk * inner / denom;
    out.R[i] = 1.0 - sk * out.C1[i];
  }
  return out;
}

ReflectionSpectrum reflect_q1(const SystemParams &params, const DressedQubit &dq,
                              const AncillaEnsemble &ens, std::span<const double> omega_grid)
{
  params.validate();
  if (ens.bins.empty())
  {
    throw InvalidArgument("reflect_q1: ensemble has no bins");
  }
  ReflectionSpectrum out;
  out.omega_grid.assign(omega_grid.begin(), omega_grid.end());
  const std::size_t n = omega_grid.size();
  out.R.resize(n);
  out.C1.resize(n);
  out.C2.resize(n);
  out.leak_2.resize(n);
  const double kappa = params.kappa;
  const double sk = std::sqrt(kappa);
  for (std::size_t i = 0; i < n; ++i)
  {
    const double w = omega_grid[i];
    if (!std::isfinite(w))
    {
      throw InvalidArgument("reflect_q1: non-finite frequency");
    }
    // S = -sum_m weight g^2 K_m, the ensemble self-energy seen by (C1, C2)
    Mat2 S{};
    for (const auto &bin : ens.bins)
    {
      if (bin.weight == 0.0)
      {
        continue;
      }
      const BinKernel k = bin_kernel(params, dq, bin.B, w);
      if (!k.finite)
      {
        throw NumericalError("reflect_q1: singular bin response at r = " +
                             std::to_string(bin.radius) + at_omega(w));
      }
      const double f = bin.weight * bin.g * bin.g;
      S.a -= f * k.K.a;
      S.b -= f * k.K.b;
      S.c -= f * k.K.c;
      S.d -= f * k.K.d;
    }
    const Mat2 M{w - 0.5 * I * kappa + S.a, S.b, S.c, w + dq.splitting - 0.5 * I * kappa + S.d};
    if (condition_number(M) > kSingularCondition)
    {
      out.singular.push_back(i);
    }
    const cplx det = M.det();
    // M (C1, C2) = (-i sqrt(kappa), 0) per unit input
    const cplx c1 = -I * sk * M.d / det;
    const cplx c2 = I * sk * M.c / det;
    if (!finite(c1) || !finite(c2))
    {
      throw NumericalError("reflect_q1: NaN/Inf in cavity amplitudes" + at_omega(w));
    }
    out.C1[i] = c1;
    out.C2[i] = c2;
    out.R[i] = 1.0 - sk * c1;
    out.leak_2[i] = kappa * std::norm(c2);
  }
  return out;
}

std::vector<BinResponse> bin_responses(const SystemParams &params, const DressedQubit &dq,
                                       const AncillaEnsemble &ens, double omega)
{
  const double grid[1] = {omega};
  const ReflectionSpectrum spec = reflect_q1(params, dq, ens, grid);
  const cplx c1 = spec.C1[0];
  const cplx c2 = spec.C2[0];
  if (c1 == cplx{})
  {
    throw NumericalError("bin_responses: cavity amplitude vanishes" + at_omega(omega));
  }
  std::vector<BinResponse> out;
  out.reserve(ens.bins.size());
  for (const auto &bin : ens.bins)
  {
    const BinKernel k = bin_kernel(params, dq, bin.B, omega);
    // A1 = -g (K11 C1 + K12 C2)
    const cplx a1 = -bin.g * (k.K.a * c1 + k.K.b * c2);
    out.push_back({bin.radius, bin.g * a1 / c1});
  }
  return out;
}

cplx rydberg_pair_determinant(const SystemParams &params, const DressedQubit &dq, double B,
                              double omega)
{
  const double s = std::sin(dq.theta);
  const double c = std::cos(dq.theta);
  const Mat2 rb{omega + s * s * B - 0.5 * I * params.gamma_a, c * s * B, c * s * B,
                omega + c * c * B + dq.splitting - 0.5 * I * params.gamma_a};
  return rb.det();
}

void write_spectrum_csv(std::ostream &os, const ReflectionSpectrum &spec)
{
  os << "omega,re_R,im_R,abs_R2,leak_2\n" << std::setprecision(17);
  for (std::size_t i = 0; i < spec.size(); ++i)
  {
    os << spec.omega_grid[i] << ',' << spec.R[i].real() << ',' << spec.R[i].imag() << ','
       << std::norm(spec.R[i]) << ',' << spec.leak_2[i] << '\n';
  }
}

}  // namespace rydphase
