// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#include "rydphase/errors.hpp"
#include "rydphase/fidelity.hpp"
#include "rydphase/spectral.hpp"
#include "rydphase/wavepacket.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace rydphase;
using namespace rydphase::test;

namespace
{

// Direct evaluation of (2 pi)^-1/2 sum_k beta(t_k) e^{-i w t_k} dt.
cplx direct_transform(const Wavepacket &wp, double omega)
{
  cplx acc{};
  for (std::size_t k = 0; k < wp.t_grid.size(); ++k)
  {
    acc += wp.envelope[k] * std::polar(1.0, -omega * wp.t_grid[k]);
  }
  return acc * wp.dt / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

TEST_CASE("packets are normalised in time and frequency")
{
  for (double bw : {0.01, 0.1, 1.0, 10.0})
  {
    const Wavepacket wp = packet_for_bandwidth(bw);
    double nt = 0.0, nw = 0.0;
    for (const auto &v : wp.envelope)
    {
      nt += std::norm(v) * wp.dt;
    }
    for (const auto &v : wp.spectrum)
    {
      nw += std::norm(v) * wp.d_omega;
    }
    CHECK(nt == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(nw == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(wp.envelope.front() == cplx{});
    CHECK(wp.d_omega == doctest::Approx(2.0 * std::numbers::pi / (kZeroPadding * wp.T_window)));
  }
}

TEST_CASE("the frequency grid covers the packet")
{
  for (double center : {0.0, 35.0, -700.0})
  {
    const Wavepacket wp = packet_for_bandwidth(0.5, center);
    CHECK(wp.omega_grid.front() <= center - 20.0 * wp.sigma_omega);
    CHECK(wp.omega_grid.back() >= center + 20.0 * wp.sigma_omega);
    double peak = 0.0;
    for (const auto &v : wp.spectrum)
    {
      peak = std::max(peak, std::norm(v));
    }
    CHECK(std::norm(wp.spectrum.front()) < 1e-8 * peak);
    CHECK(std::norm(wp.spectrum.back()) < 1e-8 * peak);
  }
}

TEST_CASE("spectrum agrees with a direct transform, including far-off carriers")
{
  for (double center : {0.0, 3.0, 1000.0, -850.0})
  {
    const Wavepacket wp = packet_for_bandwidth(0.1, center);
    const auto [a, b] = wp.support(1e-6);
    for (std::size_t i = a; i < b; i += std::max<std::size_t>(1, (b - a) / 17))
    {
      const cplx ref = direct_transform(wp, wp.omega_grid[i]);
      CHECK(std::abs(wp.spectrum[i] - ref) < 1e-12 * std::abs(wp.spectrum[(a + b) / 2]));
    }
  }
}

TEST_CASE("a carrier shifts the spectrum without changing its shape")
{
  const Wavepacket base = packet_for_bandwidth(1.0);
  const Wavepacket moved = packet_for_bandwidth(1.0, 123.0);
  REQUIRE(base.spectrum.size() == moved.spectrum.size());
  for (std::size_t i = 0; i < base.spectrum.size(); ++i)
  {
    CHECK(moved.omega_grid[i] == doctest::Approx(base.omega_grid[i] + 123.0));
    CHECK(std::abs(moved.spectrum[i] - base.spectrum[i]) < 1e-15);
  }
  CHECK(moved.sigma_omega == doctest::Approx(base.sigma_omega).epsilon(1e-12));
  for (std::size_t k = 0; k < moved.t_grid.size(); k += 97)
  {
    CHECK(std::abs(moved.envelope_at(moved.t_grid[k]) - moved.envelope[k]) < 1e-14);
  }
}

TEST_CASE("bandwidth inversion against bisection")
{
  for (double bw : {0.05, 0.5, 5.0})
  {
    const double sigma_T = bandwidth_to_sigma_T(bw);
    const double ref = 1.0 / bisect(
                               [](double inv) {
                                 const double s = 1.0 / inv;
                                 return truncated_gaussian(s, 10.0 * s, 1024).sigma_omega;
                               },
                               bw, 1e-3 * bw, 1e3 * bw, 120);
    CHECK(sigma_T == doctest::Approx(ref).epsilon(1e-9));
    const Wavepacket wp = packet_for_bandwidth(bw);
    CHECK(wp.sigma_omega == doctest::Approx(bw).epsilon(1e-10));
    CHECK(wp.T_window == doctest::Approx(10.0 * wp.sigma_T));
    // a near-Gaussian packet: sigma_omega sigma_T close to 1 / sqrt 2
    CHECK(wp.sigma_omega * wp.sigma_T == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.05));
  }
}

TEST_CASE("overlaps are converged in the sample count")
{
  for (double kappa : {20.0, 200.0})
  {
    const Wavepacket a = packet_for_bandwidth(1.0, 0.0, 1024);
    const Wavepacket b = packet_for_bandwidth(1.0, 0.0, 2048);
    const cplx ta = overlap(a, reflect_empty(kappa, a.support_grid()));
    const cplx tb = overlap(b, reflect_empty(kappa, b.support_grid()));
    CHECK(std::abs(ta - tb) < 1e-4 * std::abs(tb));
  }
}

TEST_CASE("packet construction rejects bad input")
{
  CHECK_THROWS_AS(truncated_gaussian(0.0, 10.0, 1024), InvalidArgument);
  CHECK_THROWS_AS(truncated_gaussian(1.0, 5.0, 1024), InvalidArgument);
  CHECK_THROWS_AS(truncated_gaussian(1.0, 10.0, 1000), InvalidArgument);
  CHECK_THROWS_AS(truncated_gaussian(1.0, 10.0, 512), InvalidArgument);
  CHECK_THROWS_AS(packet_for_bandwidth(-1.0), InvalidArgument);
  CHECK_THROWS_AS(spectrum_of(std::vector<cplx>(3), 1.0), InvalidArgument);
}
