// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#include "rydphase/errors.hpp"
#include "rydphase/optimizer.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

using namespace rydphase;

namespace
{

// Two-basin objective in (log kappa, linear x): global minimum near kappa = 300, x = 0.7.
double two_basins(const std::vector<double> &v)
{
  const double a = std::log10(v[0]) - std::log10(300.0);
  const double b = v[1] - 0.7;
  const double c = std::log10(v[0]) - std::log10(30.0);
  const double d = v[1] + 0.5;
  return std::min(a * a + 2.0 * b * b, 0.05 + c * c + d * d);
}

SearchSpec two_basin_spec()
{
  SearchSpec spec;
  spec.free = {{"kappa", 20.0, 2000.0, Scale::Log}, {"x", -1.0, 1.0, Scale::Linear}};
  return spec;
}

}  // namespace

TEST_CASE("finds the global minimum found by a dense grid scan")
{
  const SearchSpec spec = two_basin_spec();
  double scan_best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 400; ++i)
  {
    for (int j = 0; j <= 400; ++j)
    {
      const double k = 20.0 * std::pow(100.0, i / 400.0);
      const double x = -1.0 + 2.0 * j / 400.0;
      scan_best = std::min(scan_best, two_basins({k, x}));
    }
  }
  const MinimizeResult r = minimize(spec, two_basins);
  CHECK(r.best_value <= scan_best + 1e-9);
  CHECK(r.best_x[0] == doctest::Approx(300.0).epsilon(1e-4));
  CHECK(r.best_x[1] == doctest::Approx(0.7).epsilon(1e-4));
  CHECK(r.evaluations == r.trace.size());
}

TEST_CASE("never worse than the best start and always inside the bounds")
{
  SearchSpec spec = two_basin_spec();
  spec.max_evals = 5;
  spec.refine = 2;
  const MinimizeResult r = minimize(spec, two_basins);
  double start_best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 16; ++i)
  {
    start_best = std::min(start_best, r.trace[i].value);
  }
  CHECK(r.best_value <= start_best);
  for (const auto &e : r.trace)
  {
    CHECK(e.x[0] >= 20.0);
    CHECK(e.x[0] <= 2000.0);
    CHECK(e.x[1] >= -1.0);
    CHECK(e.x[1] <= 1.0);
  }
  // the start grid sits at cell centres, first coordinate fastest
  CHECK(r.trace[0].x[0] == doctest::Approx(20.0 * std::pow(100.0, 0.125)));
  CHECK(r.trace[1].x[0] == doctest::Approx(20.0 * std::pow(100.0, 0.375)));
  CHECK(r.trace[0].x[1] == doctest::Approx(-0.75));
  CHECK(r.trace[4].x[1] == doctest::Approx(-0.25));
}

TEST_CASE("runs are deterministic")
{
  const SearchSpec spec = two_basin_spec();
  const MinimizeResult a = minimize(spec, two_basins);
  const MinimizeResult b = minimize(spec, two_basins);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i)
  {
    CHECK(a.trace[i].x == b.trace[i].x);
    CHECK(a.trace[i].value == b.trace[i].value);
  }
}

TEST_CASE("extra starts without the grid")
{
  SearchSpec spec = two_basin_spec();
  spec.start_grid = false;
  spec.extra_starts = {{30.0, -0.5}};
  const MinimizeResult r = minimize(spec, two_basins);
  // a single descent from the local basin stays there
  CHECK(r.best_x[0] == doctest::Approx(30.0).epsilon(1e-3));
  CHECK(r.trace.front().x == std::vector<double>{30.0, -0.5});
  spec.extra_starts.clear();
  CHECK_THROWS_AS(minimize(spec, two_basins), InvalidArgument);
  spec.extra_starts = {{30.0}};
  CHECK_THROWS_AS(minimize(spec, two_basins), InvalidArgument);
}

TEST_CASE("invalid searches")
{
  SearchSpec spec = two_basin_spec();
  CHECK_THROWS_AS(minimize(SearchSpec{}, two_basins), InvalidArgument);
  spec.starts = 0;
  CHECK_THROWS_AS(minimize(spec, two_basins), InvalidArgument);
  spec = two_basin_spec();
  spec.free[0].lower = 0.0;
  CHECK_THROWS_AS(minimize(spec, two_basins), InvalidArgument);
  spec = two_basin_spec();
  spec.free[1].upper = -2.0;
  CHECK_THROWS_AS(minimize(spec, two_basins), InvalidArgument);
  spec = two_basin_spec();
  try
  {
    minimize(spec, [](const std::vector<double> &x) { return x[1] > 0.5 ? NAN : x[1]; });
    FAIL("expected a NumericalError");
  }
  catch (const NumericalError &e)
  {
    CHECK(std::string(e.what()).find("kappa = ") != std::string::npos);
  }
}

TEST_CASE("parallel_for covers every index and reports the lowest failure")
{
  for (int threads : {1, 3, 8})
  {
    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::count(hits.begin(), hits.end(), 1) == 100);
    try
    {
      parallel_for(50, threads, [](std::size_t i) {
        if (i % 7 == 3)
        {
          throw std::runtime_error(std::to_string(i));
        }
      });
      FAIL("expected an exception");
    }
    catch (const std::runtime_error &e)
    {
      CHECK(std::string(e.what()) == "3");
    }
  }
}
