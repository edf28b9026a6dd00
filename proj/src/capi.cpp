// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#include "rydphase.h"

#include "rydphase/config.hpp"
#include "rydphase/errors.hpp"
#include "rydphase/fidelity.hpp"
#include "rydphase/run.hpp"
#include "rydphase/spectral.hpp"
#include "rydphase/time_oracle.hpp"

#include <cstring>
#include <new>
#include <string>

struct rp_params
{
  rydphase::SystemParams p;
};
struct rp_ensemble
{
  rydphase::AncillaEnsemble e;
};
struct rp_wavepacket
{
  rydphase::Wavepacket w;
};
struct rp_run_config
{
  rydphase::RunConfig c;
  std::string scenario;
};

namespace
{

thread_local std::string g_last_error;

template <typename F>
rp_status guarded(F &&f)
{
  try
  {
    g_last_error.clear();
    f();
    return RP_OK;
  }
  catch (const rydphase::InvalidArgument &e)
  {
    g_last_error = e.what();
    return RP_ERR_INVALID_ARGUMENT;
  }
  catch (const rydphase::NumericalError &e)
  {
    g_last_error = e.what();
    return RP_ERR_NUMERICAL;
  }
  catch (const rydphase::ConfigError &e)
  {
    g_last_error = e.what();
    return RP_ERR_CONFIG;
  }
  catch (const rydphase::IoError &e)
  {
    g_last_error = e.what();
    return RP_ERR_IO;
  }
  catch (const std::bad_alloc &)
  {
    g_last_error = "out of memory";
    return RP_ERR_INTERNAL;
  }
  catch (const std::exception &e)
  {
    g_last_error = e.what();
    return RP_ERR_INTERNAL;
  }
  catch (...)
  {
    g_last_error = "unknown error";
    return RP_ERR_INTERNAL;
  }
}

void require(const void *ptr, const char *what)
{
  if (!ptr)
  {
    throw rydphase::InvalidArgument(std::string(what) + " must not be NULL");
  }
}

rydphase::DressedQubit to_cpp(const rp_dressed &d)
{
  rydphase::DressedQubit q;
  q.theta = d.theta;
  q.delta_bar = d.delta_bar;
  q.ryd_pop = d.ryd_pop;
  q.splitting = d.splitting;
  q.swapped = d.swapped != 0;
  return q;
}

rp_dressed to_c(const rydphase::DressedQubit &q)
{
  return {q.theta, q.delta_bar, q.ryd_pop, q.splitting, q.swapped ? 1 : 0};
}

rydphase::CqedParams to_cpp(const rp_cqed_params &c)
{
  rydphase::CqedParams p;
  p.kappa = c.kappa;
  p.g = c.g;
  p.Omega = c.Omega;
  p.eps = c.eps;
  p.Gamma1 = c.Gamma1;
  p.Gamma2 = c.Gamma2;
  p.Gamma3 = c.Gamma3;
  p.alpha1 = c.alpha1;
  p.alpha2 = c.alpha2;
  return p;
}

rp_gate_outcome to_c(const rydphase::GateOutcome &g)
{
  return {g.T0.real(), g.T0.imag(), g.T1.real(), g.T1.imag(), g.eta, g.phi, g.error};
}

void copy_out(const rydphase::ReflectionSpectrum &s, double *re, double *im)
{
  for (std::size_t i = 0; i < s.size(); ++i)
  {
    re[i] = s.R[i].real();
    im[i] = s.R[i].imag();
  }
}

double *field(rydphase::SystemParams &p, const std::string &key)
{
#define RYDPHASE_FIELD(f)                                                                     \
  if (key == #f)                                                                              \
  {                                                                                           \
    return &p.f;                                                                              \
  }
  RYDPHASE_FIELD(kappa)
  RYDPHASE_FIELD(Omega)
  RYDPHASE_FIELD(Gamma)
  RYDPHASE_FIELD(gamma_a)
  RYDPHASE_FIELD(gamma_q)
  RYDPHASE_FIELD(Delta)
  RYDPHASE_FIELD(epsilon)
  RYDPHASE_FIELD(C3)
  RYDPHASE_FIELD(g_single)
  RYDPHASE_FIELD(rho0)
  RYDPHASE_FIELD(Rc)
#undef RYDPHASE_FIELD
  throw rydphase::InvalidArgument("unknown parameter '" + key + "'");
}

}  // namespace

extern "C" {

const char *rp_version(void)
{
  static const std::string v = rydphase::version_string();
  return v.c_str();
}

const char *rp_last_error(void) { return g_last_error.c_str(); }

const char *rp_status_string(rp_status status)
{
  switch (status)
  {
  case RP_OK:
    return "ok";
  case RP_ERR_INVALID_ARGUMENT:
    return "invalid argument";
  case RP_ERR_NUMERICAL:
    return "numerical failure";
  case RP_ERR_CONFIG:
    return "configuration error";
  case RP_ERR_IO:
    return "i/o error";
  case RP_ERR_CHECK_FAILED:
    return "check failed";
  case RP_ERR_INTERNAL:
    return "internal error";
  }
  return "unknown status";
}

rp_status rp_params_create(rp_params **out)
{
  return guarded([&] {
    require(out, "out");
    *out = new rp_params{};
  });
}

rp_status rp_params_from_json(const char *json_text, rp_params **out)
{
  return guarded([&] {
    require(json_text, "json_text");
    require(out, "out");
    *out = new rp_params{rydphase::parse_params(json_text)};
  });
}

void rp_params_destroy(rp_params *p) { delete p; }

rp_status rp_params_set(rp_params *p, const char *key, double value)
{
  return guarded([&] {
    require(p, "params");
    require(key, "key");
    rydphase::SystemParams next = p->p;
    *field(next, key) = value;
    next.validate();
    p->p = next;
  });
}

rp_status rp_params_get(const rp_params *p, const char *key, double *value)
{
  return guarded([&] {
    require(p, "params");
    require(key, "key");
    require(value, "value");
    rydphase::SystemParams copy = p->p;
    *value = *field(copy, key);
  });
}

rp_status rp_dress(double Delta, double epsilon, rp_dressed *out)
{
  return guarded([&] {
    require(out, "out");
    *out = to_c(rydphase::dress(Delta, epsilon));
  });
}

rp_status rp_dress_for_population(double Delta, double pop, rp_dressed *out)
{
  return guarded([&] {
    require(out, "out");
    *out = to_c(rydphase::dress_for_population(Delta, pop));
  });
}

rp_status rp_rydberg_scaling(double n, double *C3, double *gamma)
{
  return guarded([&] {
    require(C3, "C3");
    require(gamma, "gamma");
    const auto [c, g] = rydphase::rydberg_scaling(n);
    *C3 = c;
    *gamma = g;
  });
}

rp_status rp_ensemble_cloud(const rp_params *p, double r_min, double r_max, int n_bins,
                            rp_ensemble **out)
{
  return guarded([&] {
    require(p, "params");
    require(out, "out");
    *out = new rp_ensemble{rydphase::build_cloud(p->p, r_min, r_max, n_bins)};
  });
}

rp_status rp_ensemble_shell(const rp_params *p, double r_center, double width, int n_bins,
                            rp_ensemble **out)
{
  return guarded([&] {
    require(p, "params");
    require(out, "out");
    *out = new rp_ensemble{rydphase::build_shell(p->p, r_center, width, n_bins)};
  });
}

void rp_ensemble_destroy(rp_ensemble *e) { delete e; }

rp_status rp_ensemble_size(const rp_ensemble *e, size_t *n)
{
  return guarded([&] {
    require(e, "ensemble");
    require(n, "n");
    *n = e->e.bins.size();
  });
}

rp_status rp_ensemble_bin(const rp_ensemble *e, size_t i, rp_bin *out)
{
  return guarded([&] {
    require(e, "ensemble");
    require(out, "out");
    if (i >= e->e.bins.size())
    {
      throw rydphase::InvalidArgument("bin index out of range");
    }
    const auto &b = e->e.bins[i];
    *out = {b.radius, b.weight, b.B, b.g};
  });
}

rp_status rp_ensemble_G2(const rp_ensemble *e, double *G2)
{
  return guarded([&] {
    require(e, "ensemble");
    require(G2, "G2");
    *G2 = e->e.G2;
  });
}

rp_status rp_wavepacket_create(double bandwidth, double omega_center, size_t n_samples,
                               rp_wavepacket **out)
{
  return guarded([&] {
    require(out, "out");
    *out = new rp_wavepacket{rydphase::packet_for_bandwidth(bandwidth, omega_center, n_samples)};
  });
}

void rp_wavepacket_destroy(rp_wavepacket *w) { delete w; }

rp_status rp_wavepacket_info(const rp_wavepacket *w, double *sigma_T, double *T_window,
                             double *sigma_omega, size_t *n_omega)
{
  return guarded([&] {
    require(w, "wavepacket");
    if (sigma_T)
    {
      *sigma_T = w->w.sigma_T;
    }
    if (T_window)
    {
      *T_window = w->w.T_window;
    }
    if (sigma_omega)
    {
      *sigma_omega = w->w.sigma_omega;
    }
    if (n_omega)
    {
      *n_omega = w->w.omega_grid.size();
    }
  });
}

rp_status rp_reflect_empty(double kappa, const double *omega, size_t n, double *R_re,
                           double *R_im)
{
  return guarded([&] {
    require(omega, "omega");
    require(R_re, "R_re");
    require(R_im, "R_im");
    copy_out(rydphase::reflect_empty(kappa, {omega, n}), R_re, R_im);
  });
}

rp_status rp_reflect_q0(const rp_params *p, double G2, const double *omega, size_t n,
                        double *R_re, double *R_im)
{
  return guarded([&] {
    require(p, "params");
    require(omega, "omega");
    require(R_re, "R_re");
    require(R_im, "R_im");
    copy_out(rydphase::reflect_q0(p->p, G2, {omega, n}), R_re, R_im);
  });
}

rp_status rp_reflect_q1(const rp_params *p, const rp_dressed *dq, const rp_ensemble *e,
                        const double *omega, size_t n, double *R_re, double *R_im)
{
  return guarded([&] {
    require(p, "params");
    require(dq, "dressed");
    require(e, "ensemble");
    require(omega, "omega");
    require(R_re, "R_re");
    require(R_im, "R_im");
    copy_out(rydphase::reflect_q1(p->p, to_cpp(*dq), e->e, {omega, n}), R_re, R_im);
  });
}

rp_status rp_reflect_cqed(const rp_cqed_params *p, int q, const double *omega, size_t n,
                          double *R_re, double *R_im)
{
  return guarded([&] {
    require(p, "params");
    require(omega, "omega");
    require(R_re, "R_re");
    require(R_im, "R_im");
    const auto cp = to_cpp(*p);
    cp.validate();
    copy_out(rydphase::reflect_cqed(cp, q, {omega, n}), R_re, R_im);
  });
}

rp_status rp_gate_error(double T0_re, double T0_im, double T1_re, double T1_im, double eta,
                        double phi, double *error)
{
  return guarded([&] {
    require(error, "error");
    *error = rydphase::gate_error({T0_re, T0_im}, {T1_re, T1_im}, eta, phi);
  });
}

rp_status rp_evaluate_gate(const rp_params *p, const rp_dressed *dq, const rp_ensemble *e,
                           const rp_wavepacket *w, double phi, rp_gate_outcome *out)
{
  return guarded([&] {
    require(p, "params");
    require(dq, "dressed");
    require(e, "ensemble");
    require(w, "wavepacket");
    require(out, "out");
    rydphase::GateOptions opts;
    opts.phi = phi;
    *out = to_c(rydphase::evaluate_gate(p->p, to_cpp(*dq), e->e, w->w, opts));
  });
}

rp_status rp_cqed_gate_error(const rp_cqed_params *p, const rp_wavepacket *w, double phi,
                             rp_gate_outcome *out)
{
  return guarded([&] {
    require(p, "params");
    require(w, "wavepacket");
    require(out, "out");
    const auto cp = to_cpp(*p);
    cp.validate();
    *out = to_c(rydphase::cqed_gate_error(cp, w->w, phi));
  });
}

rp_status rp_oracle_discrepancy(const rp_params *p, const rp_dressed *dq, const rp_ensemble *e,
                                const rp_wavepacket *w, double *l2, double *linf)
{
  return guarded([&] {
    require(p, "params");
    require(dq, "dressed");
    require(e, "ensemble");
    require(w, "wavepacket");
    const auto d = to_cpp(*dq);
    const auto trace = rydphase::integrate(p->p, d, e->e, w->w);
    const auto spec = rydphase::reflect_q1(p->p, d, e->e, rydphase::trace_frequency_grid(trace));
    const auto disc = rydphase::compare_spectral(trace, spec);
    if (l2)
    {
      *l2 = disc.l2;
    }
    if (linf)
    {
      *linf = disc.linf;
    }
  });
}

rp_status rp_config_load(const char *path, rp_run_config **out)
{
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    auto c = rydphase::load_config(path);
    *out = new rp_run_config{c, rydphase::to_string(c.scenario)};
  });
}

rp_status rp_config_parse(const char *json_text, rp_run_config **out)
{
  return guarded([&] {
    require(json_text, "json_text");
    require(out, "out");
    auto c = rydphase::parse_config(json_text);
    *out = new rp_run_config{c, rydphase::to_string(c.scenario)};
  });
}

void rp_config_destroy(rp_run_config *c) { delete c; }

rp_status rp_config_dump(const rp_run_config *c, char *buf, size_t buf_len, size_t *needed)
{
  return guarded([&] {
    require(c, "config");
    const std::string text = rydphase::dump_config(c->c);
    if (needed)
    {
      *needed = text.size() + 1;
    }
    if (buf)
    {
      if (buf_len < text.size() + 1)
      {
        throw rydphase::InvalidArgument("buffer too small for the config dump");
      }
      std::memcpy(buf, text.c_str(), text.size() + 1);
    }
  });
}

rp_status rp_config_scenario(const rp_run_config *c, const char **name)
{
  return guarded([&] {
    require(c, "config");
    require(name, "name");
    *name = c->scenario.c_str();
  });
}

rp_status rp_run(const rp_run_config *c, const char *out_dir, int threads, int force,
                 char *summary, size_t summary_len)
{
  bool passed = true;
  const rp_status st = guarded([&] {
    require(c, "config");
    rydphase::RunOptions opts;
    opts.out_dir = out_dir ? out_dir : ".";
    opts.threads = threads;
    opts.force = force != 0;
    const auto report = rydphase::run(c->c, opts);
    passed = report.check_passed;
    if (summary && summary_len > 0)
    {
      const std::size_t n = std::min(report.summary.size(), summary_len - 1);
      std::memcpy(summary, report.summary.data(), n);
      summary[n] = '\0';
    }
    if (!passed)
    {
      g_last_error = report.summary;
    }
  });
  return st == RP_OK && !passed ? RP_ERR_CHECK_FAILED : st;
}

}  // extern "C"
