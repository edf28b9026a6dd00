// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#include "rydphase/wavepacket.hpp"

#include "rydphase/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <numbers>

namespace rydphase
{

namespace
{

// FFTW planning is not thread-safe; execution of a finished plan is.
std::mutex &planner_mutex()
{
  static std::mutex m;
  return m;
}

class DftPlan
{
public:
  explicit DftPlan(std::size_t n)
    : n_(n), in_(fftw_alloc_complex(n)), out_(fftw_alloc_complex(n))
  {
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), in_, out_, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  ~DftPlan()
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
    fftw_free(in_);
    fftw_free(out_);
  }
  DftPlan(const DftPlan &) = delete;
  DftPlan &operator=(const DftPlan &) = delete;

  std::vector<cplx> run(const std::vector<cplx> &x)
  {
    for (std::size_t k = 0; k < n_; ++k)
    {
      const cplx v = k < x.size() ? x[k] : cplx{};
      in_[k][0] = v.real();
      in_[k][1] = v.imag();
    }
    fftw_execute(plan_);
    std::vector<cplx> y(n_);
    for (std::size_t k = 0; k < n_; ++k)
    {
      y[k] = {out_[k][0], out_[k][1]};
    }
    return y;
  }

private:
  std::size_t n_;
  fftw_complex *in_;
  fftw_complex *out_;
  fftw_plan plan_;
};

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

double clipped_gaussian(double t, double sigma_T, double T_window)
{
  if (t < 0.0 || t > T_window)
  {
    return 0.0;
  }
  const double x = t - 0.5 * T_window;
  const double offset = std::exp(-T_window * T_window / (8.0 * sigma_T * sigma_T));
  return std::max(0.0, std::exp(-x * x / (2.0 * sigma_T * sigma_T)) - offset);
}

}  // namespace

std::pair<std::vector<double>, std::vector<cplx>> spectrum_of(const std::vector<cplx> &samples,
                                                              double dt)
{
  const std::size_t n = samples.size();
  if (n < 2 || n % 2 != 0)
  {
    throw InvalidArgument("spectrum_of: need an even number of samples");
  }
  DftPlan plan(n);
  // e^{-i w t} kernel: the forward transform of samples taken at t_k = k dt.
  std::vector<cplx> raw = plan.run(samples);
  const double d_omega = 2.0 * std::numbers::pi / (static_cast<double>(n) * dt);
  const double scale = dt / std::sqrt(2.0 * std::numbers::pi);
  std::vector<double> omega(n);
  std::vector<cplx> spec(n);
  const std::size_t half = n / 2;
  for (std::size_t i = 0; i < n; ++i)
  {
    // ascending order: bins half..n-1 carry negative frequencies
    const std::size_t j = (i + half) % n;
    const double k = j < half ? static_cast<double>(j) : static_cast<double>(j) - n;
    omega[i] = k * d_omega;
    spec[i] = raw[j] * scale;
  }
  return {omega, spec};
}

double spectral_std(const std::vector<double> &omega, const std::vector<cplx> &spectrum)
{
  double w0 = 0.0, w1 = 0.0, w2 = 0.0;
  for (std::size_t i = 0; i < omega.size(); ++i)
  {
    const double p = std::norm(spectrum[i]);
    w0 += p;
    w1 += p * omega[i];
  }
  const double mean = w1 / w0;
  for (std::size_t i = 0; i < omega.size(); ++i)
  {
    const double d = omega[i] - mean;
    w2 += std::norm(spectrum[i]) * d * d;
  }
  return std::sqrt(w2 / w0);
}

cplx Wavepacket::envelope_at(double t) const
{
  const double a = clipped_gaussian(t, sigma_T, T_window);
  if (a == 0.0)
  {
    return {};
  }
  return amplitude * a * std::polar(1.0, omega_center * t);
}

std::pair<std::size_t, std::size_t> Wavepacket::support(double tail_norm) const
{
  std::size_t first = 0, last = spectrum.size();
  double total = 0.0;
  for (const auto &s : spectrum)
  {
    total += std::norm(s);
  }
  const double budget = 0.5 * tail_norm * total;
  double dropped = 0.0;
  while (first < last && dropped + std::norm(spectrum[first]) < budget)
  {
    dropped += std::norm(spectrum[first++]);
  }
  dropped = 0.0;
  while (last > first && dropped + std::norm(spectrum[last - 1]) < budget)
  {
    dropped += std::norm(spectrum[--last]);
  }
  return {first, last};
}

std::vector<double> Wavepacket::support_grid(double tail_norm) const
{
  const auto [a, b] = support(tail_norm);
  return {omega_grid.begin() + static_cast<std::ptrdiff_t>(a),
          omega_grid.begin() + static_cast<std::ptrdiff_t>(b)};
}

Wavepacket truncated_gaussian(double sigma_T, double T_window, std::size_t n_samples,
                              double omega_center)
{
  if (!(sigma_T > 0.0) || !std::isfinite(sigma_T))
  {
    throw InvalidArgument("truncated_gaussian: sigma_T must be > 0");
  }
  if (!(T_window >= 8.0 * sigma_T))
  {
    throw InvalidArgument("truncated_gaussian: window must be at least 8 sigma_T");
  }
  if (!is_power_of_two(n_samples) || n_samples < 1024)
  {
    throw InvalidArgument("truncated_gaussian: n_samples must be a power of two >= 1024");
  }
  Wavepacket wp;
  wp.sigma_T = sigma_T;
  wp.T_window = T_window;
  wp.omega_center = omega_center;
  wp.dt = T_window / static_cast<double>(n_samples);
  wp.t_grid.resize(n_samples);
  wp.envelope.resize(n_samples);
  double norm = 0.0;
  for (std::size_t k = 0; k < n_samples; ++k)
  {
    const double t = wp.dt * static_cast<double>(k);
    const double a = clipped_gaussian(t, sigma_T, T_window);
    wp.t_grid[k] = t;
    wp.envelope[k] = a * std::polar(1.0, omega_center * t);
    norm += a * a * wp.dt;
  }
  wp.amplitude = 1.0 / std::sqrt(norm);
  for (auto &v : wp.envelope)
  {
    v *= wp.amplitude;
  }
  // transform the baseband envelope and move the grid to the carrier, so a carrier beyond the
  // sampling band does not alias
  std::vector<cplx> padded(n_samples * kZeroPadding);
  for (std::size_t k = 0; k < n_samples; ++k)
  {
    padded[k] = wp.amplitude * clipped_gaussian(wp.t_grid[k], sigma_T, T_window);
  }
  auto [omega, spec] = spectrum_of(padded, wp.dt);
  for (auto &w : omega)
  {
    w += omega_center;
  }
  wp.omega_grid = std::move(omega);
  wp.spectrum = std::move(spec);
  wp.d_omega = wp.omega_grid[1] - wp.omega_grid[0];
  wp.sigma_omega = spectral_std(wp.omega_grid, wp.spectrum);
  return wp;
}

double bandwidth_to_sigma_T(double target_bandwidth, std::size_t n_samples, double window_ratio)
{
  if (!(target_bandwidth > 0.0) || !std::isfinite(target_bandwidth))
  {
    throw InvalidArgument("bandwidth_to_sigma_T: bandwidth must be > 0");
  }
  // At a fixed window ratio and sample count the discrete problem is scale invariant, so
  // sigma_omega * sigma_T is a constant of the grid.
  const Wavepacket unit = truncated_gaussian(1.0, window_ratio, n_samples);
  return unit.sigma_omega / target_bandwidth;
}

Wavepacket packet_for_bandwidth(double bandwidth, double omega_center, std::size_t n_samples,
                                double window_ratio)
{
  const double sigma_T = bandwidth_to_sigma_T(bandwidth, n_samples, window_ratio);
  return truncated_gaussian(sigma_T, window_ratio * sigma_T, n_samples, omega_center);
}

void write_envelope_csv(std::ostream &os, const Wavepacket &wp)
{
  os << "t,re,im\n" << std::setprecision(17);
  for (std::size_t k = 0; k < wp.t_grid.size(); ++k)
  {
    os << wp.t_grid[k] << ',' << wp.envelope[k].real() << ',' << wp.envelope[k].imag() << '\n';
  }
}

void write_spectrum_csv(std::ostream &os, const Wavepacket &wp)
{
  os << "omega,power\n" << std::setprecision(17);
  for (std::size_t k = 0; k < wp.omega_grid.size(); ++k)
  {
    os << wp.omega_grid[k] << ',' << std::norm(wp.spectrum[k]) << '\n';
  }
}

}  // namespace rydphase
