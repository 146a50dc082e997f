// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#include "qmitdd/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "qmitdd/errors.hpp"

namespace qmitdd {
namespace {

// CDF inversion for one block of at most 64 trials. With p <= 1/2 the
// starting mass (1-p)^64 >= 2^-64 stays far from underflow.
std::uint64_t binomial_block(unsigned n, double p, RngStream& rng) {
  const double q = 1.0 - p;
  const double ratio = p / q;
  double mass = std::pow(q, static_cast<double>(n));
  double cdf = mass;
  const double u = rng.uniform();
  unsigned k = 0;
  while (u > cdf && k < n) {
    mass *= ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
    ++k;
    cdf += mass;
  }
  return k;
}

// Direct inversion from k = 0; valid while n*p is small enough that
// (1-p)^n does not underflow. Expected cost O(n*p).
std::uint64_t binomial_small_mean(std::uint64_t n, double p, RngStream& rng) {
  const double q = 1.0 - p;
  const double ratio = p / q;
  double mass = std::exp(static_cast<double>(n) * std::log1p(-p));
  double cdf = mass;
  const double u = rng.uniform();
  std::uint64_t k = 0;
  while (u > cdf && k < n) {
    mass *= ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
    ++k;
    cdf += mass;
  }
  return k;
}

}  // namespace

std::uint64_t sample_binomial(std::uint64_t n, double p, RngStream& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw SimError("binomial probability outside [0,1]");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (p > 0.5) return n - sample_binomial(n, 1.0 - p, rng);

  if (static_cast<double>(n) * p <= 32.0) return binomial_small_mean(n, p, rng);

  // Sum of independent blocks: B(n,p) = sum_i B(n_i,p) with sum n_i = n.
  std::uint64_t total = 0;
  std::uint64_t remaining = n;
  while (remaining >= 64) {
    total += binomial_block(64, p, rng);
    remaining -= 64;
  }
  if (remaining > 0) total += binomial_block(static_cast<unsigned>(remaining), p, rng);
  return total;
}

double sample_p_hat(double p, const SamplingPolicy& policy, RngStream& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw SimError("probability outside [0,1]");
  if (policy.n_m < 1) throw ConfigError("n_m must be at least 1");
  const double n = static_cast<double>(policy.n_m);

  bool use_normal = false;
  switch (policy.mode) {
    case SamplingMode::kExactBinomial:
      use_normal = false;
      break;
    case SamplingMode::kNormalApprox:
      use_normal = true;
      break;
    case SamplingMode::kAuto:
      use_normal = n * p > 5.0 && n * (1.0 - p) > 5.0;
      break;
  }

  double n0;
  if (use_normal) {
    const double draw = n * p + rng.normal() * std::sqrt(n * p * (1.0 - p));
    n0 = std::nearbyint(draw);
    if (n0 < 0.0) n0 = 0.0;
    if (n0 > n) n0 = n;
  } else {
    n0 = static_cast<double>(sample_binomial(policy.n_m, p, rng));
  }
  return n0 / n;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw SimError("ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  size_t i = 0, j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    double fa = static_cast<double>(i) / static_cast<double>(a.size());
    double fb = static_cast<double>(j) / static_cast<double>(b.size());
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

}  // namespace qmitdd
