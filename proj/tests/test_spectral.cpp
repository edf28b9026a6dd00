// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#include "rydphase/ensemble.hpp"
#include "rydphase/errors.hpp"
#include "rydphase/spectral.hpp"
#include "support.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace rydphase;
using namespace rydphase::test;

namespace
{

constexpr cplx I{0.0, 1.0};

SystemParams fig2a_params()
{
  SystemParams p;
  p.kappa = 40.0;
  p.Omega = 30.0;
  p.Gamma = 3.0;
  p.gamma_a = 1e-3;
  p.gamma_q = 1e-3;
  p.Delta = -300.0;
  p.C3 = -30.0;
  p.g_single = 0.5;
  p.rho0 = 10.0;
  p.Rc = 5.0;
  return p;
}

AncillaEnsemble single_atom(double B, double g)
{
  AncillaEnsemble ens;
  ens.bins.push_back({3.0, 1.0, B, g});
  ens.G2 = g * g;
  return ens;
}

// Single-excitation amplitudes (C1, C2, A1, A2, B1, B2) for one ancilla, assembled by hand:
// index 1 and 2 label the occupied and the other dressed qubit state.
cplx dense_reflection(const SystemParams &p, const DressedQubit &dq, double B, double g,
                      double omega)
{
  const double s = std::sin(dq.theta), c = std::cos(dq.theta), d = dq.splitting;
  Eigen::Matrix<cplx, 6, 6> H = Eigen::Matrix<cplx, 6, 6>::Zero();
  H(0, 0) = -0.5 * I * p.kappa;
  H(1, 1) = d - 0.5 * I * p.kappa;
  H(2, 2) = -0.5 * I * p.Gamma;
  H(3, 3) = d - 0.5 * I * p.Gamma;
  H(4, 4) = s * s * B - 0.5 * I * p.gamma_a;
  H(5, 5) = c * c * B + d - 0.5 * I * p.gamma_a;
  H(0, 2) = H(2, 0) = g;
  H(1, 3) = H(3, 1) = g;
  H(2, 4) = H(4, 2) = p.Omega;
  H(3, 5) = H(5, 3) = p.Omega;
  H(4, 5) = H(5, 4) = c * s * B;
  Eigen::Matrix<cplx, 6, 6> M = H;
  M.diagonal().array() += omega;
  Eigen::Matrix<cplx, 6, 1> rhs = Eigen::Matrix<cplx, 6, 1>::Zero();
  rhs(0) = -I * std::sqrt(p.kappa);
  const Eigen::Matrix<cplx, 6, 1> x = M.fullPivLu().solve(rhs);
  return 1.0 - std::sqrt(p.kappa) * x(0);
}

}  // namespace

TEST_CASE("empty cavity")
{
  const std::vector<double> grid = linspace(-1000.0, 1000.0, 4001);
  const ReflectionSpectrum r = reflect_empty(20.0, grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
  {
    CHECK(std::abs(std::abs(r.R[i]) - 1.0) < 1e-9);
    CHECK(std::abs(r.R[grid.size() - 1 - i] - std::conj(r.R[i])) < 1e-15);
  }
  CHECK(r.R[2000] == cplx(-1.0, 0.0));
  CHECK_THROWS_AS(reflect_empty(0.0, grid), InvalidArgument);
}

TEST_CASE("single-bin solve matches a dense 6x6 solve")
{
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int draw = 0; draw < 40; ++draw)
  {
    SystemParams p = fig2a_params();
    p.kappa = 5.0 + 200.0 * u(rng);
    p.Omega = 50.0 * u(rng);
    p.Gamma = 10.0 * u(rng);
    p.gamma_a = 0.1 * u(rng);
    p.Delta = (u(rng) < 0.5 ? -1.0 : 1.0) * (10.0 + 400.0 * u(rng));
    const DressedQubit dq = dress_for_population(p.Delta, u(rng));
    const double B = (u(rng) - 0.5) * 400.0;
    const double g = 0.1 + 20.0 * u(rng);
    const std::vector<double> grid = linspace(-300.0, 300.0, 61);
    const ReflectionSpectrum r = reflect_q1(p, dq, single_atom(B, g), grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
      const cplx ref = dense_reflection(p, dq, B, g, grid[i]);
      CHECK(std::abs(r.R[i] - ref) < 1e-12);
    }
  }
}

TEST_CASE("closed form equals the full solver without blockade")
{
  SystemParams p = fig2a_params();
  const DressedQubit dq = dress(p.Delta, 0.0);
  CHECK(dq.theta == 0.0);
  SystemParams free = p;
  free.C3 = 0.0;
  const AncillaEnsemble ens = build_cloud(free, 0.5, 20.0, 256);
  const std::vector<double> grid = linspace(-200.0, 200.0, 4001);
  const ReflectionSpectrum full = reflect_q1(p, dq, ens, grid);
  const ReflectionSpectrum closed = reflect_q0(p, ens.G2, grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
  {
    worst = std::max(worst, std::abs(full.R[i] - closed.R[i]));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("lossless dynamics conserve the photon including the other-branch leak")
{
  SystemParams p = fig2a_params();
  p.Gamma = 0.0;
  p.gamma_a = 0.0;
  p.Delta = 150.0;
  p.C3 = -18.0;
  p.Rc = 10.0;
  for (double pop : {0.05, 0.3, 0.8})
  {
    const DressedQubit dq = dress_for_population(p.Delta, pop);
    const AncillaEnsemble ens = build_shell(p, 5.0, 1.0, 32);
    const std::vector<double> grid = linspace(-100.0 + 1e-3 * std::sqrt(2.0), 100.0, 2001);
    const ReflectionSpectrum r = reflect_q1(p, dq, ens, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
      CHECK(std::abs(std::norm(r.R[i]) + r.leak_2[i] - 1.0) < 1e-9);
    }
  }
  // the closed form is unitary on its own
  const std::vector<double> grid = linspace(-100.0 + 1e-3, 100.0, 2001);
  const ReflectionSpectrum r0 = reflect_q0(p, 300.0, grid);
  for (const auto &R : r0.R)
  {
    CHECK(std::abs(std::abs(R) - 1.0) < 1e-9);
  }
}

TEST_CASE("reflection is continuous on the grid")
{
  SystemParams p = fig2a_params();
  const DressedQubit dq = dress_for_population(p.Delta, 0.2);
  const AncillaEnsemble ens = build_cloud(p, 0.5, 20.0, 128);
  const std::vector<double> coarse = linspace(-50.0, 50.0, 1001);
  const std::vector<double> fine = linspace(-50.0, 50.0, 2001);
  const ReflectionSpectrum rc = reflect_q1(p, dq, ens, coarse);
  const ReflectionSpectrum rf = reflect_q1(p, dq, ens, fine);
  const double dw_f = fine[1] - fine[0];
  double slope = 0.0;
  for (std::size_t i = 0; i + 1 < fine.size(); ++i)
  {
    slope = std::max(slope, std::abs(rf.R[i + 1] - rf.R[i]) / dw_f);
  }
  const double dw = coarse[1] - coarse[0];
  for (std::size_t i = 0; i + 1 < coarse.size(); ++i)
  {
    CHECK(std::abs(rc.R[i + 1] - rc.R[i]) < 10.0 * dw * slope);
  }
}

TEST_CASE("reversing the signs of Delta and C3 mirrors the spectrum")
{
  // H -> -conj(H) up to a sign gauge of the second branch, so R(w) -> conj(R(-w))
  SystemParams p = fig2a_params();
  p.Delta = 190.0;
  p.C3 = -18.0;
  SystemParams q = p;
  q.Delta = -p.Delta;
  q.C3 = -p.C3;
  const DressedQubit dp = dress_for_population(p.Delta, 0.3);
  const DressedQubit dq = dress_for_population(q.Delta, 0.3);
  const AncillaEnsemble ep = build_shell(p, 5.0, 1.0, 16);
  const AncillaEnsemble eq = build_shell(q, 5.0, 1.0, 16);
  const std::vector<double> grid = linspace(-80.0, 80.0, 321);
  std::vector<double> mirrored(grid.rbegin(), grid.rend());
  const ReflectionSpectrum rp = reflect_q1(p, dp, ep, grid);
  const ReflectionSpectrum rq = reflect_q1(q, dq, eq, mirrored);
  for (std::size_t i = 0; i < grid.size(); ++i)
  {
    CHECK(std::abs(rq.R[i] - std::conj(rp.R[i])) < 1e-12);
  }
  // and the two conventions genuinely differ when only one sign is flipped
  SystemParams r = p;
  r.Delta = -p.Delta;
  const ReflectionSpectrum rr =
    reflect_q1(r, dress_for_population(r.Delta, 0.3), build_shell(r, 5.0, 1.0, 16), grid);
  double diff = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
  {
    diff = std::max(diff, std::abs(rr.R[i] - rp.R[i]));
  }
  CHECK(diff > 1e-3);
}

TEST_CASE("bin responses close the cavity equation")
{
  SystemParams p = fig2a_params();
  p.Delta = 190.0;
  p.C3 = -18.0;
  p.Rc = 10.0;
  const DressedQubit dq = dress_for_population(p.Delta, 0.2);
  const AncillaEnsemble ens = build_shell(p, 5.0, 1.0, 24);
  for (double w : {-40.0, -3.3, 0.0, 0.7, 25.0})
  {
    const double grid[1] = {w};
    const cplx c1 = reflect_q1(p, dq, ens, grid).C1[0];
    const std::vector<BinResponse> resp = bin_responses(p, dq, ens, w);
    REQUIRE(resp.size() == ens.bins.size());
    cplx lhs = w - 0.5 * I * p.kappa;
    for (std::size_t m = 0; m < resp.size(); ++m)
    {
      CHECK(resp[m].radius == ens.bins[m].radius);
      lhs += ens.bins[m].weight * resp[m].ratio;
    }
    // first row: (w - i kappa/2) C1 + sum_m weight g A1 = -i sqrt(kappa)
    CHECK(std::abs(lhs * c1 + I * std::sqrt(p.kappa)) < 1e-10 * std::sqrt(p.kappa));
  }
}

TEST_CASE("the Rydberg pair determinant vanishes at the pair resonances")
{
  SystemParams p = fig2a_params();
  p.gamma_a = 0.0;
  const DressedQubit dq = dress_for_population(150.0, 0.2);
  const double B = -40.0;
  const double s = std::sin(dq.theta), c = std::cos(dq.theta);
  Eigen::Matrix2d h;
  h << s * s * B, c * s * B, c * s * B, c * c * B + dq.splitting;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(h);
  for (int k = 0; k < 2; ++k)
  {
    const double w = -es.eigenvalues()[k];
    CHECK(std::abs(rydberg_pair_determinant(p, dq, B, w)) < 1e-9 * dq.delta_bar * dq.delta_bar);
    // a scan finds no smaller value nearby
    for (double dw = -1.0; dw <= 1.0; dw += 0.05)
    {
      if (std::abs(dw) > 1e-9)
      {
        CHECK(std::abs(rydberg_pair_determinant(p, dq, B, w + dw)) > 0.0);
      }
    }
  }
}

TEST_CASE("spectrum csv and error paths")
{
  SystemParams p = fig2a_params();
  const std::vector<double> grid = linspace(-1.0, 1.0, 5);
  std::ostringstream os;
  write_spectrum_csv(os, reflect_empty(20.0, grid));
  CHECK(os.str().rfind("omega,re_R,im_R,abs_R2,leak_2\n", 0) == 0);
  CHECK_THROWS_AS(reflect_q1(p, dress(10.0, 1.0), AncillaEnsemble{}, grid), InvalidArgument);
  CHECK_THROWS_AS(reflect_q0(p, -1.0, grid), InvalidArgument);
  const double bad[1] = {NAN};
  CHECK_THROWS_AS(reflect_q1(p, dress(10.0, 1.0), single_atom(1.0, 1.0), bad), InvalidArgument);
  // the lossless EIT point is a pole of the single-atom kernel
  SystemParams lossless = p;
  lossless.Gamma = 0.0;
  lossless.gamma_a = 0.0;
  lossless.Omega = 0.0;
  const double zero[1] = {0.0};
  CHECK_THROWS_AS(reflect_q1(lossless, dress(10.0, 0.0), single_atom(0.0, 1.0), zero),
                  NumericalError);
}
