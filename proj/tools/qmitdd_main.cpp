// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "qmitdd/config.hpp"
#include "qmitdd/errors.hpp"
#include "qmitdd/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"qmitdd: quantum-estimated distances inside a data-driven "
               "mechanics solver"};
  std::string experiment, config_path, out_dir, seed_str;
  int parallel = 1;
  app.add_option("experiment", experiment,
                 "one of dist-bench, zne-bench, nm-sweep, fold-sweep, "
                 "truss, dbsize-sweep, sampling-check")
      ->required();
  app.add_option("--config", config_path, "key=value config file")
      ->required();
  CLI::Option* seed_opt =
      app.add_option("--seed", seed_str, "override the config seed");
  CLI::Option* par_opt =
      app.add_option("--parallel", parallel, "worker thread count");
  CLI::Option* out_opt =
      app.add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    qmitdd::ExperimentContext ctx;
    ctx.config = qmitdd::KeyValues::load(config_path);
    if (seed_opt->count() > 0) ctx.config.set("seed", seed_str);
    long long seed = ctx.config.get_int("seed", 0);
    if (seed < 0) throw qmitdd::ConfigError("seed must be >= 0");
    ctx.seed = static_cast<std::uint64_t>(seed);
    long long cfg_parallel = ctx.config.get_int("parallel", 1);
    ctx.parallel =
        par_opt->count() > 0 ? parallel : static_cast<int>(cfg_parallel);
    if (ctx.parallel < 1)
      throw qmitdd::ConfigError("parallel must be >= 1");
    std::string cfg_out = ctx.config.get_string("out", "out");
    ctx.out_dir = out_opt->count() > 0 ? out_dir : cfg_out;
    qmitdd::run_experiment(experiment, ctx);
    return 0;
  } catch (const qmitdd::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
