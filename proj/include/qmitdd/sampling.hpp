// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QMITDD_SAMPLING_HPP_
#define QMITDD_SAMPLING_HPP_

#include <cstdint>
#include <vector>

#include "qmitdd/rng.hpp"

namespace qmitdd {

enum class SamplingMode { kExactBinomial, kNormalApprox, kAuto };

struct SamplingPolicy {
  std::uint64_t n_m = 1;  // measurement count per circuit evaluation
  SamplingMode mode = SamplingMode::kAuto;
};

// Draws n0 ~ B(n, p) exactly. Cost grows linearly with n; the normal
// approximation exists precisely to avoid this for large n.
std::uint64_t sample_binomial(std::uint64_t n, double p, RngStream& rng);

// p_hat = n0 / n_m. Auto switches to the normal approximation
// N(n_m p, n_m p (1-p)) when n_m*p > 5 and n_m*(1-p) > 5; the normal draw is
// rounded to an integer n0 and clamped to [0, n_m] before dividing.
double sample_p_hat(double p, const SamplingPolicy& policy, RngStream& rng);

// Two-sample Kolmogorov-Smirnov statistic, max |F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);

}  // namespace qmitdd

#endif  // QMITDD_SAMPLING_HPP_
