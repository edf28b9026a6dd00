/* Copyright 2026 The rydphase Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the rydphase library. Objects are opaque handles owned by the caller and
 * released with the matching *_destroy function. Every function returns an rp_status; on failure
 * rp_last_error() describes the problem for the calling thread.
 *
 * Units: rates and frequencies in 1/us, lengths in um, C3 in GHz um^3, times in us.
 */

#ifndef RYDPHASE_H
#define RYDPHASE_H

#include <stddef.h>

#if defined(_WIN32)
#define RP_API __declspec(dllexport)
#else
#define RP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rp_status
{
  RP_OK = 0,
  RP_ERR_INVALID_ARGUMENT = 1,
  RP_ERR_NUMERICAL = 2,
  RP_ERR_CONFIG = 3,
  RP_ERR_IO = 4,
  RP_ERR_CHECK_FAILED = 5, /* a validation scenario ran but its check did not pass */
  RP_ERR_INTERNAL = 6
} rp_status;

typedef struct rp_params rp_params;
typedef struct rp_ensemble rp_ensemble;
typedef struct rp_wavepacket rp_wavepacket;
typedef struct rp_run_config rp_run_config;

typedef struct rp_dressed
{
  double theta;
  double delta_bar;
  double ryd_pop;
  double splitting; /* signed energy of the unoccupied dressed state relative to the occupied one */
  int swapped;
} rp_dressed;

typedef struct rp_bin
{
  double radius;
  double weight;
  double B;
  double g;
} rp_bin;

typedef struct rp_gate_outcome
{
  double T0_re, T0_im;
  double T1_re, T1_im;
  double eta;
  double phi;
  double error;
} rp_gate_outcome;

typedef struct rp_cqed_params
{
  double kappa, g, Omega, eps;
  double Gamma1, Gamma2, Gamma3;
  double alpha1, alpha2;
} rp_cqed_params;

RP_API const char *rp_version(void);
RP_API const char *rp_last_error(void);
RP_API const char *rp_status_string(rp_status status);

/* System parameters. Keys are the field names of the JSON parameter file. */
RP_API rp_status rp_params_create(rp_params **out);
RP_API rp_status rp_params_from_json(const char *json_text, rp_params **out);
RP_API void rp_params_destroy(rp_params *p);
RP_API rp_status rp_params_set(rp_params *p, const char *key, double value);
RP_API rp_status rp_params_get(const rp_params *p, const char *key, double *value);

RP_API rp_status rp_dress(double Delta, double epsilon, rp_dressed *out);
/* Population in [0, 1]; above 1/2 the occupied state is the Rydberg-like branch. */
RP_API rp_status rp_dress_for_population(double Delta, double pop, rp_dressed *out);
RP_API rp_status rp_rydberg_scaling(double n, double *C3, double *gamma);

RP_API rp_status rp_ensemble_cloud(const rp_params *p, double r_min, double r_max, int n_bins,
                                   rp_ensemble **out);
RP_API rp_status rp_ensemble_shell(const rp_params *p, double r_center, double width, int n_bins,
                                   rp_ensemble **out);
RP_API void rp_ensemble_destroy(rp_ensemble *e);
RP_API rp_status rp_ensemble_size(const rp_ensemble *e, size_t *n);
RP_API rp_status rp_ensemble_bin(const rp_ensemble *e, size_t i, rp_bin *out);
RP_API rp_status rp_ensemble_G2(const rp_ensemble *e, double *G2);

RP_API rp_status rp_wavepacket_create(double bandwidth, double omega_center, size_t n_samples,
                                      rp_wavepacket **out);
RP_API void rp_wavepacket_destroy(rp_wavepacket *w);
/* sigma_T, T_window, sigma_omega and the length of the frequency grid. */
RP_API rp_status rp_wavepacket_info(const rp_wavepacket *w, double *sigma_T, double *T_window,
                                    double *sigma_omega, size_t *n_omega);

/* Reflection coefficients written to caller-provided arrays of length n. */
RP_API rp_status rp_reflect_empty(double kappa, const double *omega, size_t n, double *R_re,
                                  double *R_im);
RP_API rp_status rp_reflect_q0(const rp_params *p, double G2, const double *omega, size_t n,
                               double *R_re, double *R_im);
RP_API rp_status rp_reflect_q1(const rp_params *p, const rp_dressed *dq, const rp_ensemble *e,
                               const double *omega, size_t n, double *R_re, double *R_im);
RP_API rp_status rp_reflect_cqed(const rp_cqed_params *p, int q, const double *omega, size_t n,
                                 double *R_re, double *R_im);

RP_API rp_status rp_gate_error(double T0_re, double T0_im, double T1_re, double T1_im,
                               double eta, double phi, double *error);
RP_API rp_status rp_evaluate_gate(const rp_params *p, const rp_dressed *dq, const rp_ensemble *e,
                                  const rp_wavepacket *w, double phi, rp_gate_outcome *out);
RP_API rp_status rp_cqed_gate_error(const rp_cqed_params *p, const rp_wavepacket *w, double phi,
                                    rp_gate_outcome *out);

/* Integrates the time-domain equations and compares them with the frequency-domain solution. */
RP_API rp_status rp_oracle_discrepancy(const rp_params *p, const rp_dressed *dq,
                                       const rp_ensemble *e, const rp_wavepacket *w, double *l2,
                                       double *linf);

/* Run configurations. */
RP_API rp_status rp_config_load(const char *path, rp_run_config **out);
RP_API rp_status rp_config_parse(const char *json_text, rp_run_config **out);
RP_API void rp_config_destroy(rp_run_config *c);
/* Canonical JSON; *needed receives the size including the terminator. buf may be NULL. */
RP_API rp_status rp_config_dump(const rp_run_config *c, char *buf, size_t buf_len,
                                size_t *needed);
RP_API rp_status rp_config_scenario(const rp_run_config *c, const char **name);

/* Runs the configured scenario and writes its CSV and metadata into out_dir. The one-line
 * summary (truncated to fit) is written to summary when it is not NULL. Returns
 * RP_ERR_CHECK_FAILED when a validation scenario completes but fails its tolerance. */
RP_API rp_status rp_run(const rp_run_config *c, const char *out_dir, int threads, int force,
                        char *summary, size_t summary_len);

#ifdef __cplusplus
}
#endif

#endif /* RYDPHASE_H */
