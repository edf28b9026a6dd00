// Copyright 2026 The rydphase Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Talks to the library only through the C interface.

#include "rydphase.h"

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <string>
#include <thread>

namespace
{

int fail(rp_status st, const char *what)
{
  std::fprintf(stderr, "rydphase: %s: %s: %s\n", what, rp_status_string(st), rp_last_error());
  return static_cast<int>(st);
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Cavity reflection gates with dressed-qubit controlled ancilla ensembles"};
  app.set_version_flag("--version", std::string(rp_version()));
  std::string config_path;
  std::string out_dir = ".";
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  bool force = false;
  bool print_config = false;
  app.add_option("--config", config_path, "Run configuration (JSON)")->required();
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads for sweeps")
    ->check(CLI::PositiveNumber)
    ->capture_default_str();
  app.add_flag("--force", force, "Overwrite existing outputs");
  app.add_flag("--print-config", print_config,
               "Print the configuration with every default filled in and exit");
  CLI11_PARSE(app, argc, argv);

  rp_run_config *raw = nullptr;
  if (rp_status st = rp_config_load(config_path.c_str(), &raw); st != RP_OK)
  {
    return fail(st, config_path.c_str());
  }
  std::unique_ptr<rp_run_config, decltype(&rp_config_destroy)> cfg(raw, rp_config_destroy);

  if (print_config)
  {
    size_t needed = 0;
    rp_config_dump(cfg.get(), nullptr, 0, &needed);
    std::string text(needed, '\0');
    if (rp_status st = rp_config_dump(cfg.get(), text.data(), text.size(), &needed); st != RP_OK)
    {
      return fail(st, "dump");
    }
    std::fputs(text.c_str(), stdout);
    return 0;
  }

  char summary[512] = {};
  const rp_status st =
    rp_run(cfg.get(), out_dir.c_str(), threads, force ? 1 : 0, summary, sizeof summary);
  if (summary[0])
  {
    std::printf("%s\n", summary);
  }
  if (st != RP_OK)
  {
    const char *scenario = "run";
    rp_config_scenario(cfg.get(), &scenario);
    return fail(st, scenario);
  }
  return 0;
}
