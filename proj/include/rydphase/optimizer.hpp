// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace rydphase
{

enum class Scale
{
  Linear,
  Log
};

struct FreeParameter
{
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
  Scale scale = Scale::Linear;
  bool operator==(const FreeParameter &) const = default;
};

struct SearchSpec
{
  std::vector<FreeParameter> free;
  int starts = 4;           // start-grid points per dimension
  double tol = 1e-10;       // simplex spread in objective value
  double x_tol = 1e-7;      // simplex size in unit-cube coordinates
  int max_evals = 400;      // per start
  // Additional start points in physical coordinates, tried after the grid.
  std::vector<std::vector<double>> extra_starts;
  // Only the best `refine` grid points are descended from (0 = all of them).
  int refine = 0;
  // With false only the extra starts are used.
  bool start_grid = true;
};

struct Evaluation
{
  std::vector<double> x;
  double value = 0.0;
};

struct MinimizeResult
{
  std::vector<double> best_x;
  double best_value = 0.0;
  std::vector<Evaluation> trace;  // every evaluation, start grid first, then descents in order
  std::size_t evaluations = 0;
};

using Objective = std::function<double(const std::vector<double> &)>;

// Deterministic multi-start bounded Nelder-Mead. Each free coordinate is mapped to [0, 1]
// (linearly or in log), the start grid places `starts` points per dimension at cell centres,
// and each descent keeps its simplex inside the unit cube by clamping. The returned point is
// never worse than the best start. Throws NumericalError on a non-finite objective value.
MinimizeResult minimize(const SearchSpec &spec, const Objective &objective);

// Runs fn(i) for i in [0, n) on up to `threads` workers; results must be written by index.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)> &fn);

}  // namespace rydphase
