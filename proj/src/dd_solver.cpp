// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#include "qmitdd/dd_solver.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qmitdd/errors.hpp"
#include "qmitdd/rng.hpp"

namespace qmitdd {

KdTreeSearcher::KdTreeSearcher(const MaterialDatabase& db, int leaf_size,
                               const DistanceCalculator* calc)
    : tree_(db.scaled(), leaf_size), calc_(calc) {}

KdTree::QueryResult KdTreeSearcher::nearest(const Vector& query,
                                            std::uint64_t query_id) {
  if (calc_) {
    QuantumBackend backend(calc_, query_id);
    return tree_.nearest(query, backend);
  }
  ExactBackend backend;
  return tree_.nearest(query, backend);
}

BruteForceSearcher::BruteForceSearcher(const MaterialDatabase& db,
                                       const DistanceCalculator* calc)
    : db_(&db), calc_(calc) {}

KdTree::QueryResult BruteForceSearcher::nearest(const Vector& query,
                                                std::uint64_t query_id) {
  ExactBackend exact;
  QuantumBackend quantum(calc_, query_id);
  DistanceBackend& backend =
      calc_ ? static_cast<DistanceBackend&>(quantum) : exact;
  KdTree::QueryResult best;
  best.distance = std::numeric_limits<double>::infinity();
  for (int i = 0; i < db_->size(); ++i) {
    double d;
    try {
      d = backend.distance(query, db_->scaled()[static_cast<size_t>(i)], i);
    } catch (const std::exception& e) {
      throw SimError("distance backend failed at point " + std::to_string(i) +
                     ": " + e.what());
    }
    ++best.n_calls;
    if (best.index < 0 || d < best.distance) {
      best.distance = d;
      best.index = i;
    }
  }
  return best;
}

DDState initial_state(const Assembly& asmb, const MaterialDatabase& db,
                      RngStream& rng) {
  DDState st;
  int m = static_cast<int>(asmb.weight.size());
  st.assignment.resize(static_cast<size_t>(m));
  for (int e = 0; e < m; ++e)
    st.assignment[static_cast<size_t>(e)] = static_cast<int>(
        rng.uniform_int(static_cast<std::uint64_t>(db.size())));
  return st;
}

bool dd_iterate(DDState& state, const Assembly& asmb,
                const MaterialDatabase& db, NearestNeighborSearcher& nn) {
  int m = static_cast<int>(asmb.weight.size());
  if (static_cast<int>(state.assignment.size()) != m)
    throw SimError("dd_iterate: assignment size mismatch");
  Eigen::VectorXd eps_star(m), sigma_star(m);
  for (int e = 0; e < m; ++e) {
    const MaterialPoint& z = db.point(state.assignment[static_cast<size_t>(e)]);
    eps_star[e] = z.strain[0];
    sigma_star[e] = z.stress[0];
  }

  Eigen::VectorXd rhs_u =
      asmb.b.transpose() *
      (asmb.weight.array() * asmb.c * eps_star.array()).matrix();
  state.u = asmb.solve_k(rhs_u);
  Eigen::VectorXd rhs_eta =
      asmb.f - asmb.b.transpose() *
                   (asmb.weight.array() * sigma_star.array()).matrix();
  state.eta = asmb.solve_k(rhs_eta);

  state.eps = asmb.b * state.u;
  state.sigma = sigma_star + asmb.c * (asmb.b * state.eta);

  bool changed = false;
  double f_bar = 0;
  for (int e = 0; e < m; ++e) {
    MaterialPoint z;
    z.strain = Eigen::VectorXd::Constant(1, state.eps[e]);
    z.stress = Eigen::VectorXd::Constant(1, state.sigma[e]);
    Vector v = db.scale_point(z);
    KdTree::QueryResult res =
        nn.nearest(v, mix_ids(static_cast<std::uint64_t>(state.iteration),
                              static_cast<std::uint64_t>(e)));
    state.nn_calls += res.n_calls;
    if (res.index != state.assignment[static_cast<size_t>(e)]) {
      changed = true;
      state.assignment[static_cast<size_t>(e)] = res.index;
    }
    f_bar += 0.5 * asmb.weight[e] *
             (v - db.scaled()[static_cast<size_t>(res.index)]).squaredNorm();
  }
  state.f_bar = f_bar;
  ++state.iteration;
  return changed;
}

SolveReport dd_solve(const Assembly& asmb, const MaterialDatabase& db,
                     NearestNeighborSearcher& nn, std::uint64_t seed,
                     int max_iter) {
  if (max_iter < 1) throw SimError("dd_solve: max_iter must be >= 1");
  RngStream rng(seed, 0xddc0ffee);
  DDState st = initial_state(asmb, db, rng);
  SolveReport report;
  for (int it = 0; it < max_iter; ++it) {
    bool changed = dd_iterate(st, asmb, db, nn);
    report.f_bar_history.push_back(st.f_bar);
    if (!changed) {
      report.converged = true;
      break;
    }
  }
  int m = static_cast<int>(asmb.weight.size());
  report.iterations = st.iteration;
  report.f_bar = st.f_bar;
  report.assignment = st.assignment;
  report.eps_star.resize(m);
  report.sigma_star.resize(m);
  for (int e = 0; e < m; ++e) {
    const MaterialPoint& z = db.point(st.assignment[static_cast<size_t>(e)]);
    report.eps_star[e] = z.strain[0];
    report.sigma_star[e] = z.stress[0];
  }
  report.eps_mech = st.eps;
  report.sigma_mech = st.sigma;
  report.u = st.u;
  report.nn_calls = st.nn_calls;
  return report;
}

ReferenceSolution reference_solution(const Assembly& asmb,
                                     const RambergOsgoodParams& params) {
  params.validate();
  int m = static_cast<int>(asmb.weight.size());
  int n = static_cast<int>(asmb.f.size());
  ReferenceSolution sol;
  sol.u = Eigen::VectorXd::Zero(n);
  double fnorm = asmb.f.norm();
  for (int it = 0; it <= 100; ++it) {
    sol.eps = asmb.b * sol.u;
    sol.sigma.resize(m);
    for (int e = 0; e < m; ++e)
      sol.sigma[e] = ramberg_osgood_stress(params, sol.eps[e]);
    Eigen::VectorXd residual =
        asmb.f - asmb.b.transpose() *
                     (asmb.weight.array() * sol.sigma.array()).matrix();
    if (residual.norm() <= 1e-10 * (fnorm > 0 ? fnorm : 1.0)) {
      sol.iterations = it;
      return sol;
    }
    if (it == 100) break;
    Eigen::VectorXd tangent(m);
    for (int e = 0; e < m; ++e) {
      double s = std::abs(sol.sigma[e]) / params.sigma0;
      tangent[e] = params.e_mod /
                   (1.0 + params.alpha * params.beta *
                              std::pow(s, params.beta - 1.0));
    }
    Eigen::MatrixXd kt =
        asmb.b.transpose() *
        (asmb.weight.array() * tangent.array()).matrix().asDiagonal() * asmb.b;
    Eigen::LLT<Eigen::MatrixXd> llt(kt);
    if (llt.info() != Eigen::Success)
      throw SimError("reference solution: tangent factorization failed");
    sol.u += llt.solve(residual);
  }
  throw SimError("reference solution: Newton did not converge");
}

double rms_stress_error(const Eigen::VectorXd& sigma,
                        const Eigen::VectorXd& sigma_ref,
                        const Eigen::VectorXd& w) {
  if (sigma.size() != sigma_ref.size() || sigma.size() != w.size())
    throw SimError("rms_stress_error: size mismatch");
  double num = (w.array() * (sigma - sigma_ref).array().square()).sum();
  double den = (w.array() * sigma_ref.array().square()).sum();
  if (!(den > 0)) throw SimError("rms_stress_error: zero reference stresses");
  return std::sqrt(num / den);
}

}  // namespace qmitdd
