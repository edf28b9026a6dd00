// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#include "rydphase/params.hpp"

#include "rydphase/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace rydphase
{

namespace
{

void require_nonnegative(double v, const char *name)
{
  if (!(v >= 0.0) || !std::isfinite(v))
  {
    throw InvalidArgument(std::string("parameter '") + name + "' must be finite and >= 0");
  }
}

#define RYDPHASE_PARAM_FIELDS(X)                                                              \
  X(kappa) X(Omega) X(Gamma) X(gamma_a) X(gamma_q) X(Delta) X(epsilon) X(C3) X(g_single)   \
  X(rho0) X(Rc)

}  // namespace

void SystemParams::validate() const
{
  require_nonnegative(kappa, "kappa");
  require_nonnegative(Omega, "Omega");
  require_nonnegative(Gamma, "Gamma");
  require_nonnegative(gamma_a, "gamma_a");
  require_nonnegative(gamma_q, "gamma_q");
  require_nonnegative(epsilon, "epsilon");
  require_nonnegative(g_single, "g_single");
  require_nonnegative(rho0, "rho0");
  require_nonnegative(Rc, "Rc");
  if (!std::isfinite(Delta) || !std::isfinite(C3))
  {
    throw InvalidArgument("parameters 'Delta' and 'C3' must be finite");
  }
}

SystemParams parse_params(const std::string &json_text)
{
  nlohmann::json j;
  try
  {
    j = nlohmann::json::parse(json_text);
  }
  catch (const nlohmann::json::parse_error &e)
  {
    throw ConfigError(std::string("parameter file: ") + e.what());
  }
  if (!j.is_object())
  {
    throw ConfigError("parameter file: expected a flat key-value object");
  }
  SystemParams p;
  for (const auto &[key, value] : j.items())
  {
    if (!value.is_number())
    {
      throw ConfigError("parameter file: key '" + key + "' must be a number");
    }
    bool known = false;
#define RYDPHASE_READ(f)                                                                      \
  if (key == #f)                                                                              \
  {                                                                                           \
    p.f = value.get<double>();                                                                \
    known = true;                                                                             \
  }
    RYDPHASE_PARAM_FIELDS(RYDPHASE_READ)
#undef RYDPHASE_READ
    if (!known)
    {
      throw ConfigError("parameter file: unknown key '" + key + "'");
    }
  }
  p.validate();
  return p;
}

std::string dump_params(const SystemParams &p)
{
  nlohmann::ordered_json j;
#define RYDPHASE_WRITE(f) j[#f] = p.f;
  RYDPHASE_PARAM_FIELDS(RYDPHASE_WRITE)
#undef RYDPHASE_WRITE
  return j.dump(2);
}

SystemParams load_params(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw IoError("cannot open parameter file '" + path + "'");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_params(ss.str());
}

double DressedQubit::sin_theta() const { return std::sin(theta); }

double DressedQubit::cos_theta() const { return std::cos(theta); }

DressedQubit dress(double Delta, double epsilon)
{
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon) || !std::isfinite(Delta))
  {
    throw InvalidArgument("dress: epsilon must be finite and >= 0");
  }
  if (Delta == 0.0 && epsilon == 0.0)
  {
    throw InvalidArgument("dress: (Delta, epsilon) = (0, 0) has no dressed basis");
  }
  DressedQubit dq;
  dq.delta_bar = std::hypot(Delta, 2.0 * epsilon);
  dq.theta = Delta == 0.0 ? std::numbers::pi / 4.0 : 0.5 * std::atan(2.0 * epsilon / Delta);
  const double s = std::sin(dq.theta);
  dq.ryd_pop = s * s;
  // The |1_q>-connected state is the lower eigenstate for Delta >= 0 and the upper one below.
  dq.splitting = Delta >= 0.0 ? dq.delta_bar : -dq.delta_bar;
  return dq;
}

DressedQubit swap_branch(const DressedQubit &dq)
{
  DressedQubit out = dq;
  out.theta = dq.theta - std::numbers::pi / 2.0;
  const double s = std::sin(out.theta);
  out.ryd_pop = s * s;
  out.splitting = -dq.splitting;
  out.swapped = !dq.swapped;
  return out;
}

double dressing_for_population(double Delta, double target_pop)
{
  if (!(Delta > 0.0))
  {
    throw InvalidArgument("dressing_for_population: Delta must be > 0");
  }
  if (!(target_pop >= 0.0) || !(target_pop < 0.5))
  {
    throw InvalidArgument("dressing_for_population: target population must lie in [0, 1/2)");
  }
  // sin^2(theta) = p  =>  tan(2 theta) = 2 sqrt(p (1 - p)) / (1 - 2 p) = 2 epsilon / Delta
  return Delta * std::sqrt(target_pop * (1.0 - target_pop)) / (1.0 - 2.0 * target_pop);
}

DressedQubit dress_for_population(double Delta, double pop)
{
  if (!(pop >= 0.0) || !(pop <= 1.0))
  {
    throw InvalidArgument("dress_for_population: population must lie in [0, 1]");
  }
  if (Delta == 0.0)
  {
    throw InvalidArgument("dress_for_population: Delta must be nonzero");
  }
  if (pop == 0.5)
  {
    throw InvalidArgument("dress_for_population: population 1/2 needs infinite drive");
  }
  const double base_pop = pop > 0.5 ? 1.0 - pop : pop;
  const double eps = dressing_for_population(std::abs(Delta), base_pop);
  DressedQubit dq = dress(Delta, eps);
  return pop > 0.5 ? swap_branch(dq) : dq;
}

}  // namespace rydphase
