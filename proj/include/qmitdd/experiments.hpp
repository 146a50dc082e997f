// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QMITDD_EXPERIMENTS_HPP_
#define QMITDD_EXPERIMENTS_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qmitdd/config.hpp"
#include "qmitdd/distance.hpp"
#include "qmitdd/rng.hpp"

namespace qmitdd {

struct ExperimentContext {
  KeyValues config;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  int parallel = 1;
};

// Runs the named experiment (dist-bench, zne-bench, nm-sweep, fold-sweep,
// truss, dbsize-sweep, sampling-check) and writes its CSV and JSON files
// into ctx.out_dir. Throws ConfigError for unknown kinds or bad configs and
// SimError for runtime failures. Output files other than timings.json are
// byte-identical for a given config and seed, independent of ctx.parallel.
void run_experiment(const std::string& kind, ExperimentContext& ctx);

// Runs fn(0), ..., fn(n-1) on up to `workers` threads, pulling indexes from
// a shared counter. The first exception thrown stops the pool and is
// rethrown on the calling thread.
void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)>& fn);

struct VectorPair {
  Vector v, vp;
  double d = 0;  // exact squared distance
};

// v uniform on (-1,1)^dim, displacement direction uniform on the sphere,
// squared distance uniform on (0, d_max]. Near-zero-norm endpoints are
// redrawn so state preparation stays well defined.
VectorPair sample_pair(int dim, double d_max, RngStream& rng);

// sqrt( sum_i (d_hat_i - d_i)^2 / (count * max_i(d_i)^2) )
double nrmse(const std::vector<double>& d_hat,
             const std::vector<double>& d_true);

}  // namespace qmitdd

#endif  // QMITDD_EXPERIMENTS_HPP_
