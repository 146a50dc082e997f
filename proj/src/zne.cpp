// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#include "qmitdd/zne.hpp"

#include <cmath>
#include <cstddef>

#include <Eigen/Dense>

#include "qmitdd/errors.hpp"
#include "qmitdd/rng.hpp"
#include "qmitdd/transpile.hpp"

namespace qmitdd {
namespace {

void validate_series(const ProbabilitySeries& s) {
  if (s.lambdas.empty() || s.lambdas.size() != s.p_hats.size())
    throw SimError("probability series: empty or mismatched lengths");
  for (size_t i = 0; i < s.lambdas.size(); ++i) {
    if (i > 0 && !(s.lambdas[i] > s.lambdas[i - 1]))
      throw SimError("probability series: lambdas must strictly increase");
    if (!(s.p_hats[i] >= 0.0 && s.p_hats[i] <= 1.0))
      throw SimError("probability series: p_hat outside [0, 1]");
  }
}

ExtrapolationFit polynomial_ls(const ProbabilitySeries& s, FitModel model,
                               int ncoef) {
  int npts = static_cast<int>(s.lambdas.size());
  if (npts < ncoef)
    throw SimError("extrapolation fit: fewer points than coefficients");
  Eigen::MatrixXd a(npts, ncoef);
  Eigen::VectorXd b(npts);
  for (int i = 0; i < npts; ++i) {
    double x = 1.0;
    for (int j = 0; j < ncoef; ++j) {
      a(i, j) = x;
      x *= s.lambdas[static_cast<size_t>(i)];
    }
    b(i) = s.p_hats[static_cast<size_t>(i)];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < ncoef)
    throw SimError("extrapolation fit: singular normal equations");
  Eigen::VectorXd c = qr.solve(b);
  ExtrapolationFit fit;
  fit.model = model;
  fit.coefficients.assign(c.data(), c.data() + ncoef);
  fit.p_zero = fit.coefficients[0];
  return fit;
}

ExtrapolationFit richardson_fit(const ProbabilitySeries& s) {
  size_t n = s.lambdas.size();
  std::vector<double> coef = s.p_hats;  // divided differences, in place
  for (size_t j = 1; j < n; ++j)
    for (size_t i = n - 1; i >= j; --i)
      coef[i] = (coef[i] - coef[i - 1]) / (s.lambdas[i] - s.lambdas[i - j]);

  ExtrapolationFit fit;
  fit.model = FitModel::kRichardson;
  fit.newton_nodes = s.lambdas;
  fit.newton_coeffs = coef;

  // Monomial expansion for reporting.
  std::vector<double> poly(n, 0.0), basis(n, 0.0);
  basis[0] = 1.0;
  poly[0] = coef[0];
  for (size_t j = 1; j < n; ++j) {
    for (size_t i = j; i-- > 0;) {
      basis[i + 1] += basis[i];
      basis[i] *= -s.lambdas[j - 1];
    }
    for (size_t i = 0; i <= j; ++i) poly[i] += coef[j] * basis[i];
  }
  fit.coefficients = std::move(poly);
  fit.p_zero = fit.evaluate(0.0);
  return fit;
}

double exp_model(double c0, double c1, double c2, double lambda) {
  return c0 + c1 * std::exp(-c2 * lambda);
}

ExtrapolationFit exponential_fit(const ProbabilitySeries& s) {
  size_t npts = s.lambdas.size();
  if (npts < 3)
    throw SimError("extrapolation fit: fewer points than coefficients");
  ExtrapolationFit lin = polynomial_ls(s, FitModel::kLinear, 2);

  auto cost_of = [&](const Eigen::Vector3d& v) {
    double cost = 0.0;
    for (size_t i = 0; i < npts; ++i) {
      double r = s.p_hats[i] - exp_model(v[0], v[1], v[2], s.lambdas[i]);
      cost += r * r;
    }
    return cost;
  };

  // Levenberg-damped Gauss-Newton from one start; false when it diverges.
  auto run_gn = [&](Eigen::Vector3d c, double* out_cost) {
    double mu = 1e-3;
    double cost = cost_of(c);
    if (!std::isfinite(cost)) return std::optional<Eigen::Vector3d>();
    for (int iter = 0; iter < 200; ++iter) {
      Eigen::VectorXd r(npts);
      Eigen::MatrixXd j(npts, 3);
      for (size_t i = 0; i < npts; ++i) {
        double e = std::exp(-c[2] * s.lambdas[i]);
        r(static_cast<int>(i)) =
            s.p_hats[i] - exp_model(c[0], c[1], c[2], s.lambdas[i]);
        j(static_cast<int>(i), 0) = -1.0;
        j(static_cast<int>(i), 1) = -e;
        j(static_cast<int>(i), 2) = c[1] * s.lambdas[i] * e;
      }
      Eigen::Vector3d g = j.transpose() * r;
      if (!g.allFinite()) return std::optional<Eigen::Vector3d>();
      if (g.norm() < 1e-10) break;
      Eigen::Matrix3d jtj = j.transpose() * j;
      bool stepped = false;
      while (mu <= 1e12) {
        Eigen::Matrix3d lhs = jtj + mu * Eigen::Matrix3d::Identity();
        Eigen::Vector3d delta = lhs.ldlt().solve(-g);
        Eigen::Vector3d trial = c + delta;
        double trial_cost = cost_of(trial);
        if (std::isfinite(trial_cost) && trial_cost <= cost) {
          c = trial;
          cost = trial_cost;
          mu = std::max(mu * 0.3, 1e-12);
          stepped = true;
          break;
        }
        mu *= 10.0;
      }
      if (!stepped) return std::optional<Eigen::Vector3d>();
    }
    if (!c.allFinite() || !std::isfinite(exp_model(c[0], c[1], c[2], 0.0)))
      return std::optional<Eigen::Vector3d>();
    *out_cost = cost;
    return std::optional<Eigen::Vector3d>(c);
  };

  // Decay-rate starts: log-slope of the first difference pair (strongest
  // signal when the series hits its asymptote early), the average over all
  // consistent pairs, and a fixed grid for cover.
  std::vector<double> c2_starts;
  auto push_c2 = [&](double v) {
    if (std::isfinite(v) && v > 1e-8 && v < 50.0) c2_starts.push_back(v);
  };
  {
    double d1 = s.p_hats[1] - s.p_hats[0];
    double d2 = s.p_hats[2] - s.p_hats[1];
    double h = s.lambdas[2] - s.lambdas[1];
    if (d1 * d2 > 0.0 && h > 0.0)
      push_c2(-std::log(std::abs(d2) / std::abs(d1)) / h);
  }
  {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i + 2 < npts; ++i) {
      double d1 = s.p_hats[i + 1] - s.p_hats[i];
      double d2 = s.p_hats[i + 2] - s.p_hats[i + 1];
      double h = s.lambdas[i + 2] - s.lambdas[i + 1];
      if (d1 * d2 > 0.0 && h > 0.0) {
        num += -std::log(std::abs(d2) / std::abs(d1));
        den += h;
      }
    }
    if (den > 0.0) push_c2(num / den);
  }
  push_c2(0.05);
  push_c2(0.3);
  push_c2(1.0);
  push_c2(3.0);

  bool have_best = false;
  double best_cost = 0.0;
  Eigen::Vector3d best;
  for (double c2 : c2_starts) {
    // Anchor c0 at the series tail and c1 at the first point, plus the
    // first-order match to the linear fit as a second start.
    double c0a = s.p_hats[npts - 1];
    double c1a = (s.p_hats[0] - c0a) * std::exp(c2 * s.lambdas[0]);
    double c1b = -lin.coefficients[1] / c2;
    double c0b = lin.coefficients[0] - c1b;
    for (const Eigen::Vector3d& init :
         {Eigen::Vector3d(c0a, c1a, c2), Eigen::Vector3d(c0b, c1b, c2)}) {
      double cost = 0.0;
      std::optional<Eigen::Vector3d> res = run_gn(init, &cost);
      if (res && (!have_best || cost < best_cost)) {
        have_best = true;
        best_cost = cost;
        best = *res;
      }
    }
  }
  if (!have_best) {
    lin.linear_fallback = true;
    return lin;
  }

  ExtrapolationFit fit;
  fit.model = FitModel::kExponential;
  fit.coefficients = {best[0], best[1], best[2]};
  fit.p_zero = exp_model(best[0], best[1], best[2], 0.0);
  return fit;
}

}  // namespace

const char* fit_model_name(FitModel m) {
  switch (m) {
    case FitModel::kLinear:
      return "linear";
    case FitModel::kQuadratic:
      return "quadratic";
    case FitModel::kExponential:
      return "exponential";
    case FitModel::kRichardson:
      return "richardson";
  }
  return "?";
}

FitModel fit_model_from_name(const std::string& name) {
  if (name == "linear") return FitModel::kLinear;
  if (name == "quadratic") return FitModel::kQuadratic;
  if (name == "exponential") return FitModel::kExponential;
  if (name == "richardson") return FitModel::kRichardson;
  throw ConfigError("unknown extrapolation model: " + name);
}

double ExtrapolationFit::evaluate(double lambda) const {
  if (model == FitModel::kExponential && !linear_fallback)
    return exp_model(coefficients[0], coefficients[1], coefficients[2],
                     lambda);
  if (!newton_coeffs.empty()) {
    double acc = newton_coeffs.back();
    for (size_t i = newton_coeffs.size() - 1; i-- > 0;)
      acc = newton_coeffs[i] + (lambda - newton_nodes[i]) * acc;
    return acc;
  }
  double acc = 0.0;
  for (size_t i = coefficients.size(); i-- > 0;)
    acc = coefficients[i] + lambda * acc;
  return acc;
}

ProbabilitySeries collect_series(const BasisCircuit& circuit, int n,
                                 const Engine& engine,
                                 const std::optional<SamplingPolicy>& sampling,
                                 std::uint64_t seed, std::uint64_t task_id) {
  if (n < 0) throw SimError("collect_series: fold count must be >= 0");
  ProbabilitySeries out;
  out.n_m = sampling ? static_cast<double>(sampling->n_m) : 0.0;
  for (int i = 0; i <= n; ++i) {
    double p = engine.prob_zero(fold(circuit, i));
    if (sampling) {
      RngStream rng(seed, mix_ids(task_id, static_cast<std::uint64_t>(i)));
      p = sample_p_hat(p, *sampling, rng);
    }
    out.lambdas.push_back(1.0 + 2.0 * i);
    out.p_hats.push_back(p);
  }
  return out;
}

ProbabilitySeries sample_series(const ProbabilitySeries& exact,
                                const SamplingPolicy& sampling,
                                std::uint64_t seed, std::uint64_t task_id) {
  ProbabilitySeries out;
  out.lambdas = exact.lambdas;
  out.n_m = static_cast<double>(sampling.n_m);
  out.p_hats.reserve(exact.p_hats.size());
  for (std::size_t i = 0; i < exact.p_hats.size(); ++i) {
    RngStream rng(seed, mix_ids(task_id, static_cast<std::uint64_t>(i)));
    out.p_hats.push_back(sample_p_hat(exact.p_hats[i], sampling, rng));
  }
  return out;
}

ExtrapolationFit fit_extrapolation(const ProbabilitySeries& series,
                                   FitModel model) {
  validate_series(series);
  switch (model) {
    case FitModel::kLinear:
      return polynomial_ls(series, model, 2);
    case FitModel::kQuadratic:
      return polynomial_ls(series, model, 3);
    case FitModel::kRichardson:
      return richardson_fit(series);
    case FitModel::kExponential:
      return exponential_fit(series);
  }
  throw SimError("unreachable fit model");
}

DistanceCalculator::DistanceCalculator(const NoiseModel* noise,
                                       EstimateOptions options)
    : options_(std::move(options)), engine_(noise) {}

DistanceEstimate estimate_from_p(double p, Algorithm algorithm,
                                 const Vector& v, const Vector& vp,
                                 bool mitigated, double n_m) {
  bool swap = algorithm == Algorithm::kSwapBased;
  DistanceEstimate est;
  est.algorithm = algorithm;
  est.n_m = n_m;
  est.lambda = mitigated ? 0.0 : 1.0;
  if (mitigated) {
    double lo = swap ? 0.5 : 0.0;
    if (p < lo) {
      p = lo;
      est.p_clamped = true;
    } else if (p > 1.0) {
      p = 1.0;
      est.p_clamped = true;
    }
  }
  est.p_hat = p;
  double z = v.squaredNorm() + vp.squaredNorm();
  est.d_hat = swap ? distance_from_ps(p, z)
                   : distance_from_ph(p, v.norm(), vp.norm());
  if (mitigated && est.d_hat < 0.0) {
    est.d_hat = 0.0;
    est.d_clamped = true;
  }
  return est;
}

DistanceEstimate DistanceCalculator::estimate(const Vector& v,
                                              const Vector& vp,
                                              std::uint64_t task_id) const {
  bool swap = options_.algorithm == Algorithm::kSwapBased;
  Circuit circuit = swap ? swap_test_circuit(v, vp) : h_test_circuit(v, vp);
  BasisCircuit basis = decompose(circuit);

  double n_m = options_.sampling ? static_cast<double>(options_.sampling->n_m)
                                 : 0.0;
  if (options_.zne) {
    ProbabilitySeries series =
        collect_series(basis, options_.zne->n_folds, engine_,
                       options_.sampling, options_.seed, task_id);
    ExtrapolationFit fit = fit_extrapolation(series, options_.zne->model);
    DistanceEstimate est =
        estimate_from_p(fit.p_zero, options_.algorithm, v, vp, true, n_m);
    est.fit_fallback = fit.linear_fallback;
    return est;
  }
  double p = engine_.prob_zero(basis);
  if (options_.sampling) {
    RngStream rng(options_.seed, mix_ids(task_id, 0));
    p = sample_p_hat(p, *options_.sampling, rng);
  }
  return estimate_from_p(p, options_.algorithm, v, vp, false, n_m);
}

DistanceEstimate mitigated_distance(const Vector& v, const Vector& vp,
                                    Algorithm algorithm, FitModel model,
                                    int n_folds,
                                    const std::optional<SamplingPolicy>& sampling,
                                    const NoiseModel* noise, std::uint64_t seed,
                                    std::uint64_t task_id) {
  EstimateOptions options;
  options.algorithm = algorithm;
  options.sampling = sampling;
  options.zne = ZneConfig{model, n_folds};
  options.seed = seed;
  DistanceCalculator calc(noise, options);
  return calc.estimate(v, vp, task_id);
}

}  // namespace qmitdd
