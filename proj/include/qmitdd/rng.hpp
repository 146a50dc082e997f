// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QMITDD_RNG_HPP_
#define QMITDD_RNG_HPP_

#include <cstdint>

namespace qmitdd {

// Counter-based random stream keyed by (master seed, stream id). Two streams
// with the same key produce the same sequence regardless of which thread
// consumes them, so parallel runs are reproducible for any scheduling.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  // Uniform in [0, 1).
  double uniform();

  // Uniform in (0, 1], never exactly zero (safe under log()).
  double uniform_pos();

  // Standard normal via Box-Muller; pairs are cached.
  double normal();

  // Uniform integer in [0, n), unbiased (rejection sampling). n >= 1.
  std::uint64_t uniform_int(std::uint64_t n);

 private:
  std::uint64_t state_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

// Stable mix of two 64-bit values, used to derive per-task stream ids.
std::uint64_t mix_ids(std::uint64_t a, std::uint64_t b);

}  // namespace qmitdd

#endif  // QMITDD_RNG_HPP_
