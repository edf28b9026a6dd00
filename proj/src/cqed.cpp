// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#include "rydphase/cqed.hpp"

#include "rydphase/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace rydphase
{

namespace
{

constexpr cplx I{0.0, 1.0};

#define RYDPHASE_CQED_FIELDS(X)                                                               \
  X(kappa) X(g) X(Omega) X(eps) X(Gamma1) X(Gamma2) X(Gamma3) X(alpha1) X(alpha2)

}  // namespace

void CqedParams::validate() const
{
#define RYDPHASE_CHECK(f)                                                                     \
  if (!(f >= 0.0) || !std::isfinite(f))                                                       \
  {                                                                                           \
    throw InvalidArgument("cQED parameter '" #f "' must be finite and >= 0");                 \
  }
  RYDPHASE_CQED_FIELDS(RYDPHASE_CHECK)
#undef RYDPHASE_CHECK
  if (!(kappa > 0.0))
  {
    throw InvalidArgument("cQED parameter 'kappa' must be > 0");
  }
}

bool CqedParams::anharmonic_regime() const
{
  return std::max(Omega, eps) < 0.5 * std::min(alpha1, alpha2);
}

CqedParams cqed_from_qubit_lifetime(double qubit_lifetime_us, const CqedParams &base_in)
{
  if (!(qubit_lifetime_us > 0.0))
  {
    throw InvalidArgument("cqed_from_qubit_lifetime: lifetime must be > 0");
  }
  CqedParams base = base_in;
  const double gamma1 = 2.0 / qubit_lifetime_us;
  base.Gamma1 = gamma1;
  base.Gamma2 = 2.0 * gamma1;
  base.Gamma3 = 3.0 * gamma1;
  return base;
}

std::string dump_cqed_params(const CqedParams &p)
{
  nlohmann::ordered_json j;
#define RYDPHASE_WRITE(f) j[#f] = p.f;
  RYDPHASE_CQED_FIELDS(RYDPHASE_WRITE)
#undef RYDPHASE_WRITE
  return j.dump(2);
}

CqedParams parse_cqed_params(const std::string &json_text)
{
  nlohmann::json j;
  try
  {
    j = nlohmann::json::parse(json_text);
  }
  catch (const nlohmann::json::parse_error &e)
  {
    throw ConfigError(std::string("cQED parameters: ") + e.what());
  }
  if (!j.is_object())
  {
    throw ConfigError("cQED parameters: expected a flat key-value object");
  }
  CqedParams p;
  for (const auto &[key, value] : j.items())
  {
    if (!value.is_number())
    {
      throw ConfigError("cQED parameters: key '" + key + "' must be a number");
    }
    bool known = false;
#define RYDPHASE_READ(f)                                                                      \
  if (key == #f)                                                                              \
  {                                                                                           \
    p.f = value.get<double>();                                                                \
    known = true;                                                                             \
  }
    RYDPHASE_CQED_FIELDS(RYDPHASE_READ)
#undef RYDPHASE_READ
    if (!known)
    {
      throw ConfigError("cQED parameters: unknown key '" + key + "'");
    }
  }
  p.validate();
  return p;
}

ReflectionSpectrum reflect_cqed(const CqedParams &p, int q, std::span<const double> omega_grid)
{
  p.validate();
  if (q != 0 && q != 1)
  {
    throw InvalidArgument("reflect_cqed: qubit state must be 0 or 1");
  }
  ReflectionSpectrum out;
  out.omega_grid.assign(omega_grid.begin(), omega_grid.end());
  const std::size_t n = omega_grid.size();
  out.R.resize(n);
  out.C1.resize(n);
  out.C2.assign(n, cplx{});
  out.leak_2.assign(n, 0.0);
  const double sk = std::sqrt(p.kappa);
  // Ladder matrix elements: sqrt(2) Omega on |1_a>-|2_a>, sqrt(3) eps on |2_a 1_q>-|3_a 0_q>.
  const double om2 = 2.0 * p.Omega * p.Omega;
  const double ep2 = q * 3.0 * p.eps * p.eps;
  for (std::size_t i = 0; i < n; ++i)
  {
    const double w = omega_grid[i];
    const cplx dk = 0.5 * p.kappa + I * w;
    const cplx d1 = 0.5 * p.Gamma1 + I * w;
    const cplx d2 = 0.5 * p.Gamma2 + I * w;
    const cplx d3 = 0.5 * p.Gamma3 + I * w;
    // kappa/2 + iw + g^2 / (d1 + 2 Omega^2 / (d2 + 3 q eps^2 / d3)) with inner denominators
    // cleared
    const cplx inner = d2 * d3 + ep2;
    const cplx mid = d1 * inner + om2 * d3;
    const cplx denom = dk * mid + p.g * p.g * inner;
    if (denom == cplx{})
    {
      throw NumericalError("reflect_cqed: singular response at omega = " + std::to_string(w));
    }
    out.C1[i] = sk * mid / denom;
    out.R[i] = 1.0 - sk * out.C1[i];
  }
  return out;
}

GateOutcome cqed_gate_error(const CqedParams &p, const Wavepacket &packet, double phi)
{
  const std::vector<double> grid = packet.support_grid();
  GateOutcome g;
  g.T0 = overlap(packet, reflect_cqed(p, 0, grid));
  g.T1 = overlap(packet, reflect_cqed(p, 1, grid));
  g.eta = 1.0;
  g.phi = phi;
  g.error = gate_error(g.T0, g.T1, g.eta, g.phi);
  return g;
}

}  // namespace rydphase
