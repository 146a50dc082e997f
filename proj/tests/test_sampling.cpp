// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include "doctest.h"
#include "qmitdd/rng.hpp"
#include "qmitdd/sampling.hpp"

using namespace qmitdd;

TEST_SUITE("sampling") {

TEST_CASE("binomial edge probabilities") {
  RngStream r(1, 0);
  for (int i = 0; i < 50; ++i) {
    CHECK(sample_binomial(100, 0.0, r) == 0);
    CHECK(sample_binomial(100, 1.0, r) == 100);
  }
}

TEST_CASE("exact binomial moments") {
  RngStream r(2, 0);
  const std::uint64_t n = 40;
  const double p = 0.3;
  const int trials = 50000;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < trials; ++i) {
    double k = static_cast<double>(sample_binomial(n, p, r));
    sum += k;
    sum2 += k * k;
  }
  double mean = sum / trials;
  double var = sum2 / trials - mean * mean;
  CHECK(std::abs(mean - n * p) < 0.1);
  CHECK(std::abs(var - n * p * (1 - p)) / (n * p * (1 - p)) < 0.05);
}

TEST_CASE("auto mode equals exact mode below the normal threshold") {
  // n*p = 3 <= 5 keeps Auto on the exact path, so identical streams must
  // produce identical draws.
  SamplingPolicy auto_pol{10, SamplingMode::kAuto};
  SamplingPolicy exact_pol{10, SamplingMode::kExactBinomial};
  for (int i = 0; i < 200; ++i) {
    RngStream ra(7, static_cast<std::uint64_t>(i));
    RngStream re(7, static_cast<std::uint64_t>(i));
    CHECK(sample_p_hat(0.3, auto_pol, ra) == sample_p_hat(0.3, exact_pol, re));
  }
}

TEST_CASE("p_hat is a clamped integer multiple of 1/n_m") {
  SamplingPolicy pol{100000, SamplingMode::kAuto};  // normal path
  RngStream r(3, 0);
  for (int i = 0; i < 1000; ++i) {
    double ph = sample_p_hat(0.3, pol, r);
    CHECK(ph >= 0.0);
    CHECK(ph <= 1.0);
    double scaled = ph * static_cast<double>(pol.n_m);
    CHECK(std::abs(scaled - std::round(scaled)) < 1e-9);
  }
}

TEST_CASE("normal approximation matches the binomial variance law") {
  const double p = 0.3;
  const std::uint64_t n_m = 100000;
  SamplingPolicy pol{n_m, SamplingMode::kNormalApprox};
  RngStream r(4, 0);
  const int trials = 20000;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < trials; ++i) {
    double ph = sample_p_hat(p, pol, r);
    sum += ph;
    sum2 += ph * ph;
  }
  double mean = sum / trials;
  double sd = std::sqrt(sum2 / trials - mean * mean);
  double sd_theory = std::sqrt(p * (1 - p) / static_cast<double>(n_m));
  CHECK(std::abs(mean - p) < 5 * sd_theory / std::sqrt(trials));
  CHECK(std::abs(sd - sd_theory) / sd_theory < 0.1);
}

TEST_CASE("ks statistic hand values") {
  CHECK(ks_statistic({1, 2, 3}, {1, 2, 3}) == doctest::Approx(0.0));
  CHECK(ks_statistic({0, 0, 0}, {1, 1, 1}) == doctest::Approx(1.0));
  // F_a and F_b diverge by 0.5 just after x=1 and rejoin at each tie-free
  // step: max gap 0.5.
  CHECK(ks_statistic({1, 2}, {1.5, 2.5}) == doctest::Approx(0.5));
  // Heavy ties across both samples must be walked through together.
  CHECK(ks_statistic({0, 0, 1, 1}, {0, 0, 1, 1}) == doctest::Approx(0.0));
  CHECK(ks_statistic({0, 1}, {0, 0, 1, 1}) == doctest::Approx(0.0));
}

TEST_CASE("ks statistic of unequal distributions grows") {
  RngStream r(5, 0);
  std::vector<double> a, b;
  for (int i = 0; i < 4000; ++i) {
    a.push_back(r.uniform());
    b.push_back(r.uniform() + 0.2);
  }
  double d = ks_statistic(a, b);
  CHECK(d > 0.15);
  CHECK(d < 0.25);
}

TEST_CASE("auto draws pass a two-sample ks test against exact binomial") {
  const double p = 0.3;
  const std::uint64_t n_m = 100000;  // n*p = 3e4 >> 5: normal path
  SamplingPolicy auto_pol{n_m, SamplingMode::kAuto};
  SamplingPolicy exact_pol{n_m, SamplingMode::kExactBinomial};
  const int draws = 4000;
  std::vector<double> a, b;
  a.reserve(draws);
  b.reserve(draws);
  RngStream ra(6, 1), rb(6, 2);
  for (int i = 0; i < draws; ++i) {
    a.push_back(sample_p_hat(p, auto_pol, ra));
    b.push_back(sample_p_hat(p, exact_pol, rb));
  }
  double d = ks_statistic(a, b);
  // 1% critical value for the two-sample test with equal sizes.
  double crit = 1.628 * std::sqrt(2.0 / draws);
  CHECK(d < crit);
}

}  // TEST_SUITE
