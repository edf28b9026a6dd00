// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#include "rydphase/optimizer.hpp"

#include "rydphase/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace rydphase
{

namespace
{

using Point = std::vector<double>;

class Mapping
{
public:
  explicit Mapping(const std::vector<FreeParameter> &free) : free_(free)
  {
    for (const auto &f : free_)
    {
      if (!(f.upper > f.lower) || !std::isfinite(f.lower) || !std::isfinite(f.upper))
      {
        throw InvalidArgument("minimize: bad bounds for '" + f.name + "'");
      }
      if (f.scale == Scale::Log && !(f.lower > 0.0))
      {
        throw InvalidArgument("minimize: log-scaled '" + f.name + "' needs a positive range");
      }
    }
  }

  Point to_physical(const Point &u) const
  {
    Point x(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
    {
      const auto &f = free_[i];
      const double v = std::clamp(u[i], 0.0, 1.0);
      x[i] = f.scale == Scale::Log ? f.lower * std::pow(f.upper / f.lower, v)
                                   : f.lower + (f.upper - f.lower) * v;
      x[i] = std::clamp(x[i], f.lower, f.upper);
    }
    return x;
  }

  Point to_unit(const Point &x) const
  {
    Point u(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
    {
      const auto &f = free_[i];
      const double v = std::clamp(x[i], f.lower, f.upper);
      u[i] = f.scale == Scale::Log ? std::log(v / f.lower) / std::log(f.upper / f.lower)
                                   : (v - f.lower) / (f.upper - f.lower);
    }
    return u;
  }

private:
  const std::vector<FreeParameter> &free_;
};

std::string describe(const std::vector<FreeParameter> &free, const Point &x)
{
  std::ostringstream os;
  os.precision(12);
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    os << (i ? ", " : "") << free[i].name << " = " << x[i];
  }
  return os.str();
}

class Evaluator
{
public:
  Evaluator(const SearchSpec &spec, const Objective &f, const Mapping &map,
            std::vector<Evaluation> &trace)
    : spec_(spec), f_(f), map_(map), trace_(trace)
  {
  }

  double operator()(const Point &u)
  {
    Point x = map_.to_physical(u);
    const double v = f_(x);
    if (!std::isfinite(v))
    {
      throw NumericalError("minimize: non-finite objective at " + describe(spec_.free, x));
    }
    trace_.push_back({std::move(x), v});
    ++count;
    return v;
  }

  std::size_t count = 0;

private:
  const SearchSpec &spec_;
  const Objective &f_;
  const Mapping &map_;
  std::vector<Evaluation> &trace_;
};

Point clamp_unit(Point u)
{
  for (auto &v : u)
  {
    v = std::clamp(v, 0.0, 1.0);
  }
  return u;
}

// Bounded Nelder-Mead in the unit cube. Returns (best point, best value).
std::pair<Point, double> descend(Evaluator &eval, Point start, double start_value, double step,
                                 const SearchSpec &spec)
{
  const std::size_t n = start.size();
  std::vector<Point> simplex{start};
  std::vector<double> values{start_value};
  for (std::size_t i = 0; i < n; ++i)
  {
    Point p = start;
    p[i] += p[i] + step <= 1.0 ? step : -step;
    p = clamp_unit(p);
    values.push_back(eval(p));
    simplex.push_back(std::move(p));
  }
  const std::size_t budget = eval.count + static_cast<std::size_t>(spec.max_evals);
  std::vector<std::size_t> order(n + 1);
  while (eval.count < budget)
  {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front(), worst = order.back(),
                      second = order[order.size() - 2];
    double size = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
    {
      for (std::size_t d = 0; d < n; ++d)
      {
        size = std::max(size, std::abs(simplex[i][d] - simplex[best][d]));
      }
    }
    const double spread = values[worst] - values[best];
    if (size <= spec.x_tol || (spread <= spec.tol && size <= 1e-3))
    {
      break;
    }
    Point centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i)
    {
      if (i == worst)
      {
        continue;
      }
      for (std::size_t d = 0; d < n; ++d)
      {
        centroid[d] += simplex[i][d] / static_cast<double>(n);
      }
    }
    auto along = [&](double t) {
      Point p(n);
      for (std::size_t d = 0; d < n; ++d)
      {
        p[d] = centroid[d] + t * (simplex[worst][d] - centroid[d]);
      }
      return clamp_unit(p);
    };
    Point xr = along(-1.0);
    const double fr = eval(xr);
    if (fr < values[best])
    {
      Point xe = along(-2.0);
      const double fe = eval(xe);
      if (fe < fr)
      {
        simplex[worst] = std::move(xe);
        values[worst] = fe;
      }
      else
      {
        simplex[worst] = std::move(xr);
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second])
    {
      simplex[worst] = std::move(xr);
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    Point xc = along(outside ? -0.5 : 0.5);
    const double fc = eval(xc);
    if (fc < (outside ? fr : values[worst]))
    {
      simplex[worst] = std::move(xc);
      values[worst] = fc;
      continue;
    }
    // shrink towards the best vertex
    for (std::size_t i = 0; i <= n; ++i)
    {
      if (i == best)
      {
        continue;
      }
      for (std::size_t d = 0; d < n; ++d)
      {
        simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
      }
      values[i] = eval(simplex[i]);
    }
  }
  const auto it = std::min_element(values.begin(), values.end());
  return {simplex[static_cast<std::size_t>(it - values.begin())], *it};
}

}  // namespace

MinimizeResult minimize(const SearchSpec &spec, const Objective &objective)
{
  if (spec.free.empty())
  {
    throw InvalidArgument("minimize: no free parameters");
  }
  if (spec.starts < 1)
  {
    throw InvalidArgument("minimize: need at least one start per dimension");
  }
  const Mapping map(spec.free);
  const std::size_t dim = spec.free.size();
  MinimizeResult res;
  Evaluator eval(spec, objective, map, res.trace);

  // start grid at cell centres, first coordinate fastest
  std::vector<Point> starts;
  std::size_t total = spec.start_grid ? 1 : 0;
  for (std::size_t d = 0; d < dim && spec.start_grid; ++d)
  {
    total *= static_cast<std::size_t>(spec.starts);
  }
  for (std::size_t idx = 0; idx < total; ++idx)
  {
    Point u(dim);
    std::size_t rem = idx;
    for (std::size_t d = 0; d < dim; ++d)
    {
      const std::size_t k = rem % static_cast<std::size_t>(spec.starts);
      rem /= static_cast<std::size_t>(spec.starts);
      u[d] = (static_cast<double>(k) + 0.5) / spec.starts;
    }
    starts.push_back(std::move(u));
  }
  for (const auto &x : spec.extra_starts)
  {
    if (x.size() != dim)
    {
      throw InvalidArgument("minimize: extra start has the wrong dimension");
    }
    starts.push_back(map.to_unit(x));
  }
  if (starts.empty())
  {
    throw InvalidArgument("minimize: no start points");
  }
  std::vector<double> start_values;
  start_values.reserve(starts.size());
  for (const auto &u : starts)
  {
    start_values.push_back(eval(u));
  }

  std::vector<std::size_t> order(starts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return start_values[a] < start_values[b];
  });
  std::size_t n_descents = order.size();
  if (spec.refine > 0)
  {
    n_descents = std::min<std::size_t>(n_descents, static_cast<std::size_t>(spec.refine));
  }

  Point best_u = starts[order.front()];
  double best_v = start_values[order.front()];
  const double step = 0.5 / spec.starts;
  for (std::size_t i = 0; i < n_descents; ++i)
  {
    const std::size_t s = order[i];
    auto [u, v] = descend(eval, starts[s], start_values[s], step, spec);
    if (v < best_v)
    {
      best_v = v;
      best_u = std::move(u);
    }
  }
  res.best_x = map.to_physical(best_u);
  res.best_value = best_v;
  res.evaluations = eval.count;
  return res;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)> &fn)
{
  const std::size_t workers =
    std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1)
  {
    for (std::size_t i = 0; i < n; ++i)
    {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::size_t err_index = n;
  std::exception_ptr err;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
    {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++)
        {
          try
          {
            fn(i);
          }
          catch (...)
          {
            // keep the failure of the lowest index so the reported error does not depend on
            // scheduling
            std::lock_guard lock(err_mutex);
            if (i < err_index)
            {
              err_index = i;
              err = std::current_exception();
            }
          }
        }
      });
    }
  }
  if (err)
  {
    std::rethrow_exception(err);
  }
}

}  // namespace rydphase
