// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

#include "rydphase/config.hpp"
#include "rydphase/errors.hpp"
#include "support.hpp"

#include <doctest.h>

#include <filesystem>

using namespace rydphase;
using namespace rydphase::test;

namespace
{

const char *kMinimal = R"({
  "scenario": "gate-error",
  "params": {"kappa": 20, "Delta": -300},
  "dressing": {"mode": "population", "value": 0.2}
})";

std::string config_error(const std::string &text)
{
  try
  {
    parse_config(text);
  }
  catch (const ConfigError &e)
  {
    return e.what();
  }
  return "";
}

std::string with_sweep(const std::string &sweep)
{
  return R"({"scenario": "fig3", "params": {"Delta": 190},
    "dressing": {"mode": "theta", "value": 0.15}, "sweep": )" +
         sweep + "}";
}

}  // namespace

TEST_CASE("shipped configurations parse and round-trip")
{
  int count = 0;
  for (const auto &entry : std::filesystem::directory_iterator(RYDPHASE_CONFIG_DIR))
  {
    if (entry.path().extension() != ".json")
    {
      continue;
    }
    CAPTURE(entry.path().string());
    const RunConfig cfg = load_config(entry.path().string());
    const RunConfig back = parse_config(dump_config(cfg));
    CHECK(back == cfg);
    CHECK(config_hash(back) == config_hash(cfg));
    CHECK(dump_config(back) == dump_config(cfg));
    ++count;
  }
  CHECK(count >= 8);
}

TEST_CASE("defaults and hashing")
{
  const RunConfig a = parse_config(kMinimal);
  CHECK(a.scenario == Scenario::GateError);
  CHECK(a.params.kappa == 20.0);
  CHECK(a.packet.n_samples == 1024);
  CHECK(a.dressing.mode == DressingMode::Population);
  RunConfig b = a;
  CHECK(config_hash(a) == config_hash(b));
  b.params.kappa = 20.000000000001;
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("errors name the offending key")
{
  CHECK(config_error(R"({"params": {}})").find("'scenario' is required") != std::string::npos);
  CHECK(config_error(R"({"scenario": "fig9"})").find("key 'scenario'") != std::string::npos);
  CHECK(config_error(R"({"scenario": "fig3", "params": {"kapa": 1}})").find("kapa") !=
        std::string::npos);
  CHECK(config_error(R"({"scenario": "fig3", "packet": {"bandwidth": "wide"}})")
            .find("'packet.bandwidth' must be a number") != std::string::npos);
  CHECK(config_error(R"({"scenario": "fig3", "packet": {"n_samples": 1000}})")
            .find("packet.n_samples") != std::string::npos);
  CHECK(config_error(R"({"scenario": "fig3", "ensemble": {"geometry": "cube"}})")
            .find("ensemble.geometry") != std::string::npos);
  CHECK(config_error(R"({"scenario": "fig3", "colour": 1})").find("unknown key 'colour'") !=
        std::string::npos);
}

TEST_CASE("syntax errors report line and column")
{
  const std::string msg = config_error("{\n  \"scenario\": \"fig3\",\n  \"params\": {,}\n}");
  CHECK(msg.find("line 3") != std::string::npos);
  CHECK(msg.find("column") != std::string::npos);
}

TEST_CASE("sweep validation")
{
  const std::string ok = R"({"grid_name": "width", "grid": [1, 2],
    "free": [{"name": "kappa", "lower": 20, "upper": 200, "scale": "log"}]})";
  CHECK(parse_config(with_sweep(ok)).sweep.grid.size() == 2);
  CHECK(config_error(with_sweep(R"({"grid_name": "width"})")).find("together") !=
        std::string::npos);
  CHECK(config_error(with_sweep(R"({"refine": -1})")).find("refine") != std::string::npos);
  CHECK(config_error(with_sweep(R"({"cross_seed": -2})")).find("cross_seed") !=
        std::string::npos);
  CHECK(config_error(with_sweep(R"({"free": [{"name": "kappa", "lower": 5, "upper": 1}]})"))
            .find("upper must exceed lower") != std::string::npos);
  CHECK(config_error(with_sweep(R"({"free": [{"name": "kappa", "lower": 1, "upper": 5}],
      "extra_starts": [{"Omega": 3}]})"))
            .find("'sweep.extra_starts[0]': 'Omega' is not a free parameter") !=
        std::string::npos);
  CHECK(config_error(with_sweep(R"({"cases": [{"label": "a"}, {"label": "a"}]})"))
            .find("duplicate label") != std::string::npos);
  const RunConfig c = parse_config(with_sweep(
      R"({"free": [{"name": "kappa", "lower": 1, "upper": 5}], "cross_seed": 3,
          "extra_starts": [{"kappa": 2}]})"));
  CHECK(c.sweep.cross_seed == 3);
  REQUIRE(c.sweep.extra_starts.size() == 1);
  CHECK(c.sweep.extra_starts[0][0].second == 2.0);
}

TEST_CASE("missing files")
{
  CHECK_THROWS_AS(load_config("/nonexistent/rydphase.json"), IoError);
}
