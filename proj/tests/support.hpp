// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace rydphase::test
{

using cplx = std::complex<double>;

inline std::vector<double> linspace(double a, double b, std::size_t n)
{
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

// Composite Simpson rule with n (even) intervals.
template <class F>
double simpson(F f, double a, double b, int n = 2000)
{
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i)
  {
    s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  }
  return s * h / 3.0;
}

// Bisection for an increasing function.
template <class F>
double bisect(F f, double target, double lo, double hi, int iterations = 200)
{
  for (int i = 0; i < iterations; ++i)
  {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string &name)
{
  const auto dir = std::filesystem::temp_directory_path() / ("rydphase_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string read_file(const std::filesystem::path &p)
{
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace rydphase::test
