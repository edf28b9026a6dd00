// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#include "rydphase/errors.hpp"
#include "rydphase/run.hpp"
#include "support.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

using namespace rydphase;
using namespace rydphase::test;

namespace
{

RunConfig small_sweep()
{
  RunConfig cfg = load_config(std::string(RYDPHASE_CONFIG_DIR) + "/fig3.json");
  cfg.ensemble.n_bins = 8;
  cfg.sweep.grid = {0.5, 1.0, 2.0};
  cfg.sweep.starts = 2;
  cfg.sweep.max_evals = 60;
  cfg.sweep.cross_seed = 2;
  cfg.output = "small.csv";
  return cfg;
}

std::string sweep_csv(const RunConfig &cfg, int threads)
{
  std::ostringstream os;
  write_sweep_csv(os, run_sweep(cfg, threads));
  return os.str();
}

}  // namespace

TEST_CASE("sweep output does not depend on the thread count")
{
  const RunConfig cfg = small_sweep();
  const std::string one = sweep_csv(cfg, 1);
  CHECK(one == sweep_csv(cfg, 4));
  CHECK(one == sweep_csv(cfg, 1));
  CHECK(std::count(one.begin(), one.end(), '\n') == 7);
}

TEST_CASE("neighbour reseeding never makes a point worse")
{
  RunConfig cfg = small_sweep();
  cfg.sweep.cross_seed = 0;
  const SweepTable plain = run_sweep(cfg, 1);
  cfg.sweep.cross_seed = 3;
  const SweepTable seeded = run_sweep(cfg, 1);
  REQUIRE(plain.rows.size() == seeded.rows.size());
  for (std::size_t i = 0; i < plain.rows.size(); ++i)
  {
    CHECK(seeded.rows[i].result.outcome.error <= plain.rows[i].result.outcome.error);
    CHECK(seeded.rows[i].evaluations >= plain.rows[i].evaluations);
  }
}

TEST_CASE("run writes the table and its metadata")
{
  const auto dir = scratch_dir("run");
  const RunConfig cfg = small_sweep();
  RunOptions opts;
  opts.out_dir = dir.string();
  const RunReport rep = run(cfg, opts);
  REQUIRE(rep.files.size() == 2);
  CHECK(rep.summary.find("fig3: 6 points") == 0);
  const auto meta = nlohmann::json::parse(read_file(dir / "small.meta.json"));
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
  CHECK(meta["config_hash"] == hash);
  CHECK(meta["rows"] == 6);
  CHECK(parse_config(meta["config"].dump()) == cfg);
  CHECK(read_file(dir / "small.csv") == sweep_csv(cfg, 1));

  CHECK_THROWS_AS(run(cfg, opts), IoError);
  opts.force = true;
  opts.threads = 3;
  CHECK_NOTHROW(run(cfg, opts));
}

TEST_CASE("atomic writes")
{
  const auto dir = scratch_dir("atomic");
  const std::string path = (dir / "a.txt").string();
  write_atomically(path, "one", false);
  CHECK_THROWS_AS(write_atomically(path, "two", false), IoError);
  CHECK(read_file(path) == "one");
  write_atomically(path, "two", true);
  CHECK(read_file(path) == "two");
  CHECK_THROWS_AS(write_atomically((dir / "missing" / "b.txt").string(), "x", false), IoError);
}

TEST_CASE("named values")
{
  RunConfig cfg = load_config(std::string(RYDPHASE_CONFIG_DIR) + "/gate_error.json");
  PointState s = base_state(cfg);
  SUBCASE("dressing by population and angle keep the sign of Delta")
  {
    set_value(s, "pop", 0.3);
    CHECK(get_value(s, "pop") == doctest::Approx(0.3));
    const double theta = get_value(s, "theta");
    CHECK(theta > 0.0);
    CHECK(state_dressing(s).theta < 0.0);
    set_value(s, "theta", theta);
    CHECK(get_value(s, "pop") == doctest::Approx(0.3).epsilon(1e-12));
    // the swapped branch shares the mixing angle of its partner
    set_value(s, "pop", 0.7);
    CHECK(state_dressing(s).swapped);
    CHECK(get_value(s, "theta") == doctest::Approx(theta).epsilon(1e-12));
  }
  SUBCASE("abs_Delta")
  {
    set_value(s, "abs_Delta", 500.0);
    CHECK(get_value(s, "Delta") == -500.0);
    CHECK(get_value(s, "abs_Delta") == 500.0);
  }
  SUBCASE("Rydberg scaling")
  {
    set_value(s, "n", 100.0);
    CHECK(get_value(s, "C3") == doctest::Approx(-30.0));
    CHECK(get_value(s, "gamma_q") == doctest::Approx(1e-3));
  }
  SUBCASE("packet and gate")
  {
    set_value(s, "bandwidth", 0.7);
    set_value(s, "phi", std::numbers::pi / 2.0);
    CHECK(get_value(s, "bandwidth") == 0.7);
    const PointResult r = evaluate_point(s);
    CHECK(r.outcome.phi == std::numbers::pi / 2.0);
    CHECK(r.sigma_omega == doctest::Approx(0.7).epsilon(1e-3));
  }
  CHECK_THROWS_AS(set_value(s, "colour", 1.0), InvalidArgument);
  CHECK_THROWS_AS(get_value(s, "colour"), InvalidArgument);
}

TEST_CASE("empty cavity backend")
{
  RunConfig cfg = load_config(std::string(RYDPHASE_CONFIG_DIR) + "/reflection_empty.json");
  cfg.scenario = Scenario::GateError;
  PointState s = base_state(cfg);
  REQUIRE(s.backend == Backend::Empty);
  set_value(s, "kappa", 40.0);
  const PointResult r = evaluate_point(s);
  CHECK(r.outcome.T0 == r.outcome.T1);
  CHECK_THROWS_AS(set_value(s, "Omega", 1.0), InvalidArgument);
}
