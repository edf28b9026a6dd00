// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#include "rydphase/time_oracle.hpp"

#include "rydphase/errors.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>

namespace rydphase
{

namespace
{

constexpr cplx I{0.0, 1.0};

// Non-Hermitian single-excitation Hamiltonian in the layout
// [C1, C2, (A1, A2, B1, B2) per bin], applied as y = -i H x.
class Hamiltonian
{
public:
  Hamiltonian(const SystemParams &p, const DressedQubit &dq, const AncillaEnsemble &ens)
    : p_(p), split_(dq.splitting)
  {
    const double s = std::sin(dq.theta);
    const double c = std::cos(dq.theta);
    for (const auto &bin : ens.bins)
    {
      bins_.push_back({bin.g * std::sqrt(bin.weight), s * s * bin.B, c * c * bin.B,
                       c * s * bin.B});
    }
  }

  std::size_t dim() const { return 2 + 4 * bins_.size(); }

  void apply(const Eigen::VectorXcd &x, Eigen::VectorXcd &y) const
  {
    const double hk = 0.5 * p_.kappa;
    const double hG = 0.5 * p_.Gamma;
    const double hg = 0.5 * p_.gamma_a;
    cplx h0 = -I * hk * x[0];
    cplx h1 = (split_ - I * hk) * x[1];
    for (std::size_t m = 0; m < bins_.size(); ++m)
    {
      const Bin &b = bins_[m];
      const std::size_t o = 2 + 4 * m;
      const cplx a1 = x[o], a2 = x[o + 1], b1 = x[o + 2], b2 = x[o + 3];
      h0 += b.G * a1;
      h1 += b.G * a2;
      const cplx ha1 = p_.Omega * b1 + b.G * x[0] - I * hG * a1;
      const cplx ha2 = p_.Omega * b2 + b.G * x[1] + (split_ - I * hG) * a2;
      const cplx hb1 = p_.Omega * a1 + (b.s2B - I * hg) * b1 + b.csB * b2;
      const cplx hb2 = p_.Omega * a2 + (b.c2B + split_ - I * hg) * b2 + b.csB * b1;
      y[o] = -I * ha1;
      y[o + 1] = -I * ha2;
      y[o + 2] = -I * hb1;
      y[o + 3] = -I * hb2;
    }
    y[0] = -I * h0;
    y[1] = -I * h1;
  }

private:
  struct Bin
  {
    double G, s2B, c2B, csB;
  };
  SystemParams p_;
  double split_;
  std::vector<Bin> bins_;
};

}  // namespace

double oracle_max_rate(const SystemParams &params, const DressedQubit &dq,
                       const AncillaEnsemble &ens)
{
  double r = std::max({params.kappa, params.Omega, params.Gamma, std::abs(dq.delta_bar),
                       std::abs(dq.splitting)});
  for (const auto &b : ens.bins)
  {
    r = std::max({r, std::abs(b.B), b.g * std::sqrt(b.weight)});
  }
  return r;
}

TimeTrace integrate(const SystemParams &params, const DressedQubit &dq, const AncillaEnsemble &ens,
                    const Wavepacket &packet, const OracleOptions &opts)
{
  params.validate();
  if (ens.bins.size() > kOracleMaxBins)
  {
    throw InvalidArgument("integrate: the time-domain oracle is limited to 64 bins");
  }
  const double max_rate =
    std::max(oracle_max_rate(params, dq, ens), std::abs(packet.omega_center));
  if (opts.dt > 0.0 && !(opts.dt < 0.1 / max_rate))
  {
    throw InvalidArgument("integrate: dt must be < 0.1 / max rate");
  }
  const double dt_target = opts.dt > 0.0 ? opts.dt : 0.02 / max_rate;
  // integration step divides the packet sample spacing so records land on the packet grid
  const std::size_t stride =
    opts.record_stride > 0 ? opts.record_stride
                           : static_cast<std::size_t>(std::ceil(packet.dt / dt_target));
  const double dt = packet.dt / static_cast<double>(stride);
  if (!(dt < 0.1 / max_rate))
  {
    throw InvalidArgument("integrate: dt must be < 0.1 / max rate");
  }
  const double settle =
    opts.settle_time > 0.0 ? opts.settle_time : std::max(5.0 / params.kappa, 3.0 * packet.T_window);
  // record length: a multiple of the packet length, so that the default is the packet grid
  const std::size_t base = packet.t_grid.size();
  const double needed = packet.T_window + settle;
  const std::size_t blocks =
    std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(needed / (packet.dt * base))));
  const std::size_t n_rec = blocks * base;

  const Hamiltonian H(params, dq, ens);
  const std::size_t dim = H.dim();
  const double sk = std::sqrt(params.kappa);

  TimeTrace tr;
  tr.dt = packet.dt;
  tr.omega_center = packet.omega_center;
  tr.t_grid.resize(n_rec);
  tr.beta_in.resize(n_rec);
  tr.beta_out.resize(n_rec);
  tr.C1.resize(n_rec);
  tr.C2.resize(n_rec);
  if (opts.record_atoms)
  {
    const std::vector<std::vector<cplx>> empty(ens.bins.size(), std::vector<cplx>(n_rec));
    tr.A1 = tr.A2 = tr.B1 = tr.B2 = empty;
  }

  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(dim);
  Eigen::VectorXcd k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);

  // flux rates: |beta_in|^2, |beta_out|^2 and the leak kappa |C2|^2 of the other qubit branch
  using Flux = std::array<double, 3>;
  auto rhs = [&](double t, const Eigen::VectorXcd &state, Eigen::VectorXcd &out, Flux &f) {
    H.apply(state, out);
    const cplx b = packet.envelope_at(t);
    out[0] += sk * b;
    f = {std::norm(b), std::norm(b - sk * state[0]), params.kappa * std::norm(state[1])};
  };
  Flux flux{};

  auto record = [&](std::size_t k, double t) {
    const cplx b = packet.envelope_at(t);
    tr.t_grid[k] = t;
    tr.beta_in[k] = b;
    tr.beta_out[k] = b - sk * x[0];
    tr.C1[k] = x[0];
    tr.C2[k] = x[1];
    if (opts.record_atoms)
    {
      for (std::size_t m = 0; m < ens.bins.size(); ++m)
      {
        tr.A1[m][k] = x[2 + 4 * m];
        tr.A2[m][k] = x[3 + 4 * m];
        tr.B1[m][k] = x[4 + 4 * m];
        tr.B2[m][k] = x[5 + 4 * m];
      }
    }
  };

  const bool lossless = params.Gamma == 0.0 && params.gamma_a == 0.0;
  record(0, 0.0);
  for (std::size_t k = 1; k < n_rec; ++k)
  {
    for (std::size_t s = 0; s < stride; ++s)
    {
      const double t = packet.dt * static_cast<double>(k - 1) + dt * static_cast<double>(s);
      Flux f1, f2, f3, f4;
      rhs(t, x, k1, f1);
      tmp = x + 0.5 * dt * k1;
      rhs(t + 0.5 * dt, tmp, k2, f2);
      tmp = x + 0.5 * dt * k2;
      rhs(t + 0.5 * dt, tmp, k3, f3);
      tmp = x + dt * k3;
      rhs(t + dt, tmp, k4, f4);
      x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      for (std::size_t j = 0; j < flux.size(); ++j)
      {
        flux[j] += dt / 6.0 * (f1[j] + 2.0 * f2[j] + 2.0 * f3[j] + f4[j]);
      }
    }
    if (!x.allFinite())
    {
      throw NumericalError("integrate: non-finite amplitudes at t = " +
                           std::to_string(packet.dt * static_cast<double>(k)));
    }
    // the in-out balance is the norm lost to decay and must not go negative
    const double balance = flux[0] - flux[1] - flux[2] - x.squaredNorm();
    if (balance < -1e-9 || (lossless && std::abs(balance) > 1e-6))
    {
      throw NumericalError("integrate: norm growth detected at t = " +
                           std::to_string(packet.dt * static_cast<double>(k)));
    }
    record(k, packet.dt * static_cast<double>(k));
  }
  tr.input_norm = flux[0];
  tr.output_norm = flux[1];
  tr.leak_norm = flux[2];
  tr.final_system_norm = x.squaredNorm();
  return tr;
}

namespace
{

// Spectrum of recorded samples, demodulated by the packet carrier and shifted back onto the
// carrier so that it lines up with the packet's own frequency grid.
std::pair<std::vector<double>, std::vector<cplx>> carrier_spectrum(const TimeTrace &trace,
                                                                   const std::vector<cplx> &x)
{
  std::vector<cplx> base(x.size());
  for (std::size_t k = 0; k < x.size(); ++k)
  {
    base[k] = x[k] * std::polar(1.0, -trace.omega_center * trace.t_grid[k]);
  }
  auto out = spectrum_of(base, trace.dt);
  for (auto &w : out.first)
  {
    w += trace.omega_center;
  }
  return out;
}

}  // namespace

std::vector<double> trace_frequency_grid(const TimeTrace &trace)
{
  return carrier_spectrum(trace, trace.beta_out).first;
}

std::pair<std::vector<double>, std::vector<cplx>> trace_output_spectrum(const TimeTrace &trace)
{
  return carrier_spectrum(trace, trace.beta_out);
}

std::pair<std::vector<double>, std::vector<cplx>> trace_input_spectrum(const TimeTrace &trace)
{
  return carrier_spectrum(trace, trace.beta_in);
}

Discrepancy compare_spectral(const TimeTrace &trace, const ReflectionSpectrum &spectrum)
{
  const auto [omega, out_spec] = trace_output_spectrum(trace);
  const auto in_spec = trace_input_spectrum(trace).second;
  if (spectrum.size() != omega.size())
  {
    throw InvalidArgument("compare_spectral: spectrum is not on the trace frequency grid");
  }
  const double dw = omega[1] - omega[0];
  Discrepancy d;
  d.n = omega.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < omega.size(); ++i)
  {
    if (std::abs(spectrum.omega_grid[i] - omega[i]) > 1e-9 * dw)
    {
      throw InvalidArgument("compare_spectral: spectrum is not on the trace frequency grid");
    }
    const double diff = std::abs(out_spec[i] - spectrum.R[i] * in_spec[i]);
    sum += diff * diff;
    d.linf = std::max(d.linf, diff);
  }
  d.l2 = std::sqrt(sum * dw);
  return d;
}

void write_trace_csv(std::ostream &os, const TimeTrace &trace)
{
  os << "t,re_beta_in,im_beta_in,re_beta_out,im_beta_out,re_C1,im_C1,re_C2,im_C2\n"
     << std::setprecision(17);
  for (std::size_t k = 0; k < trace.t_grid.size(); ++k)
  {
    os << trace.t_grid[k] << ',' << trace.beta_in[k].real() << ',' << trace.beta_in[k].imag()
       << ',' << trace.beta_out[k].real() << ',' << trace.beta_out[k].imag() << ','
       << trace.C1[k].real() << ',' << trace.C1[k].imag() << ',' << trace.C2[k].real() << ','
       << trace.C2[k].imag() << '\n';
  }
}

}  // namespace rydphase
