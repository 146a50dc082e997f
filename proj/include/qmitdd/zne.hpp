// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QMITDD_ZNE_HPP_
#define QMITDD_ZNE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmitdd/distance.hpp"
#include "qmitdd/sampling.hpp"
#include "qmitdd/simulator.hpp"

namespace qmitdd {

enum class FitModel { kLinear, kQuadratic, kExponential, kRichardson };

const char* fit_model_name(FitModel m);
FitModel fit_model_from_name(const std::string& name);  // throws ConfigError

struct ProbabilitySeries {
  std::vector<double> lambdas;  // odd integers 1, 3, ..., 1 + 2n
  std::vector<double> p_hats;
  double n_m = 0;  // measurements per point; 0 = exact probabilities
};

struct ExtrapolationFit {
  FitModel model = FitModel::kLinear;
  // Monomial coefficients c0..cn; for Exponential: {c0, c1, c2} of
  // c0 + c1 * exp(-c2 * lambda).
  std::vector<double> coefficients;
  double p_zero = 0;
  bool linear_fallback = false;
  // Newton interpolation form kept for Richardson so evaluation does not
  // round-trip through the monomial basis.
  std::vector<double> newton_nodes;
  std::vector<double> newton_coeffs;

  double evaluate(double lambda) const;
};

// Evaluates the circuit at fold counts 0..n (lambda = 1, 3, ..., 1 + 2n).
// With a sampling policy, point i draws from the stream
// (seed, mix_ids(task_id, i)); without one, exact probabilities are
// recorded and n_m is 0.
ProbabilitySeries collect_series(const BasisCircuit& circuit, int n,
                                 const Engine& engine,
                                 const std::optional<SamplingPolicy>& sampling,
                                 std::uint64_t seed, std::uint64_t task_id);

// Redraws shot noise on top of exact probabilities, using the same streams
// as collect_series. Lets sweeps reuse one simulation across n_m values.
ProbabilitySeries sample_series(const ProbabilitySeries& exact,
                                const SamplingPolicy& sampling,
                                std::uint64_t seed, std::uint64_t task_id);

// Least-squares extrapolation of the series to lambda = 0. Richardson is
// full polynomial interpolation (degree = points - 1); Exponential uses
// damped Gauss-Newton (gradient norm < 1e-10 or 200 iterations) and falls
// back to the linear fit if it diverges.
ExtrapolationFit fit_extrapolation(const ProbabilitySeries& series,
                                   FitModel model);

// Converts a measured (lambda = 1) or extrapolated (lambda = 0) probability
// into a distance estimate. Mitigated values are clamped to the physical
// range of the algorithm; unmitigated ones are reported as-is.
DistanceEstimate estimate_from_p(double p, Algorithm algorithm,
                                 const Vector& v, const Vector& vp,
                                 bool mitigated, double n_m);

struct ZneConfig {
  FitModel model = FitModel::kRichardson;
  int n_folds = 2;  // max fold count n; series has n + 1 points
};

struct EstimateOptions {
  Algorithm algorithm = Algorithm::kHBased;
  std::optional<SamplingPolicy> sampling;  // nullopt = exact probabilities
  std::optional<ZneConfig> zne;            // nullopt = unmitigated
  std::uint64_t seed = 0;
};

// Distance estimation pipeline: build circuit, lower, run (optionally
// folded), sample, extrapolate, convert to a squared distance. Holds the
// engine with its cached noise superoperators; safe for concurrent use.
class DistanceCalculator {
 public:
  DistanceCalculator(const NoiseModel* noise, EstimateOptions options);

  // task_id separates random streams of independent estimates.
  DistanceEstimate estimate(const Vector& v, const Vector& vp,
                            std::uint64_t task_id) const;

  const EstimateOptions& options() const { return options_; }
  const Engine& engine() const { return engine_; }

 private:
  EstimateOptions options_;
  Engine engine_;
};

DistanceEstimate mitigated_distance(const Vector& v, const Vector& vp,
                                    Algorithm algorithm, FitModel model,
                                    int n_folds,
                                    const std::optional<SamplingPolicy>& sampling,
                                    const NoiseModel* noise, std::uint64_t seed,
                                    std::uint64_t task_id = 0);

}  // namespace qmitdd

#endif  // QMITDD_ZNE_HPP_
