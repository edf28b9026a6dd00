// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#include "rydphase/fidelity.hpp"

#include "rydphase/errors.hpp"

#include <cmath>
#include <sstream>

namespace rydphase
{

cplx overlap(const Wavepacket &packet, const ReflectionSpectrum &spectrum)
{
  const std::size_t n = spectrum.size();
  if (n == 0 || packet.omega_grid.empty())
  {
    throw InvalidArgument("overlap: empty grid");
  }
  const double dw = packet.d_omega;
  const double pos = (spectrum.omega_grid.front() - packet.omega_grid.front()) / dw;
  const long first = std::lround(pos);
  if (first < 0 || static_cast<std::size_t>(first) + n > packet.omega_grid.size())
  {
    throw InvalidArgument("overlap: spectrum grid is not part of the packet grid");
  }
  const auto off = static_cast<std::size_t>(first);
  for (std::size_t k = 0; k < n; ++k)
  {
    if (std::abs(packet.omega_grid[off + k] - spectrum.omega_grid[k]) > 1e-9 * dw)
    {
      throw InvalidArgument("overlap: spectrum grid is not part of the packet grid");
    }
  }
  double total = 0.0, covered = 0.0;
  for (std::size_t k = 0; k < packet.spectrum.size(); ++k)
  {
    total += std::norm(packet.spectrum[k]);
  }
  cplx acc{};
  for (std::size_t k = 0; k < n; ++k)
  {
    const double p = std::norm(packet.spectrum[off + k]);
    covered += p;
    const double w = (k == 0 || k + 1 == n) ? 0.5 : 1.0;
    acc += w * p * std::conj(spectrum.R[k]);
  }
  if (total - covered > 1e-12 * total)
  {
    throw InvalidArgument("overlap: spectrum grid does not cover the packet support");
  }
  return acc * dw;
}

double eta(double gamma_q, double T_gate, double theta)
{
  if (!(gamma_q >= 0.0) || !(T_gate >= 0.0))
  {
    throw InvalidArgument("eta: gamma_q and T_gate must be >= 0");
  }
  const double s = std::sin(theta);
  return std::exp(-gamma_q * T_gate * s * s / 2.0);
}

double gate_error(cplx T0, cplx T1, double eta, double phi)
{
  constexpr double slack = 1e-9;
  if (!(std::abs(T0) <= 1.0 + slack) || !(std::abs(T1) <= 1.0 + slack))
  {
    throw InvalidArgument("gate_error: overlaps must satisfy |T| <= 1");
  }
  if (!(eta > 0.0) || !(eta <= 1.0))
  {
    throw InvalidArgument("gate_error: eta must lie in (0, 1]");
  }
  if (!std::isfinite(phi))
  {
    throw InvalidArgument("gate_error: phi must be finite");
  }
  const cplx coherent = 1.0 + std::polar(1.0, phi) * T0 + eta + T1 * eta;
  const double trace = 1.0 + std::norm(T0) + eta * eta + std::norm(T1) * eta * eta;
  double e = 1.0 - (trace + std::norm(coherent)) / 20.0;
  if (e < 0.0 && e > -1e-12)
  {
    e = 0.0;
  }
  if (e > 1.0 && e < 1.0 + 1e-12)
  {
    e = 1.0;
  }
  return e;
}

double gate_fidelity_matrix(const Eigen::MatrixXcd &M)
{
  if (M.rows() != 4 || M.cols() != 4)
  {
    throw InvalidArgument("gate_fidelity_matrix: expected a 4x4 matrix");
  }
  const double tr_mm = (M * M.adjoint()).trace().real();
  return (tr_mm + std::norm(M.trace())) / 20.0;
}

GateOutcome evaluate_gate(const SystemParams &params, const DressedQubit &dq,
                          const AncillaEnsemble &ens, const Wavepacket &packet,
                          const GateOptions &opts)
{
  const std::vector<double> grid = packet.support_grid();
  const ReflectionSpectrum r0 = reflect_q0(params, ens.G2, grid);
  const ReflectionSpectrum r1 = reflect_q1(params, dq, ens, grid);
  if (!r1.singular.empty())
  {
    std::ostringstream os;
    os << "evaluate_gate: ill-conditioned cavity system at omega = "
       << r1.omega_grid[r1.singular.front()];
    throw NumericalError(os.str());
  }
  GateOutcome g;
  g.T0 = overlap(packet, r0);
  g.T1 = overlap(packet, r1);
  g.phi = opts.phi;
  const double T_gate = opts.T_gate < 0.0 ? packet.T_window : opts.T_gate;
  g.eta = eta(params.gamma_q, T_gate, dq.theta);
  g.error = gate_error(g.T0, g.T1, g.eta, g.phi);
  return g;
}

std::string gate_outcome_header() { return "re_T0,im_T0,re_T1,im_T1,eta,phi,error"; }

std::string gate_outcome_row(const GateOutcome &g)
{
  std::ostringstream os;
  os.precision(17);
  os << g.T0.real() << ',' << g.T0.imag() << ',' << g.T1.real() << ',' << g.T1.imag() << ','
     << g.eta << ',' << g.phi << ',' << g.error;
  return os.str();
}

}  // namespace rydphase
