// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QMITDD_DD_SOLVER_HPP_
#define QMITDD_DD_SOLVER_HPP_

#include <cstdint>
#include <vector>

#include "qmitdd/kdtree.hpp"
#include "qmitdd/material.hpp"
#include "qmitdd/truss.hpp"

namespace qmitdd {

// Nearest-neighbor search used per bar and iteration; query_id keys the
// random streams of noisy backends so parallel searches stay reproducible.
class NearestNeighborSearcher {
 public:
  virtual ~NearestNeighborSearcher() = default;
  virtual KdTree::QueryResult nearest(const Vector& query,
                                      std::uint64_t query_id) = 0;
};

// k-d tree search over the database's scaled coordinates. With a
// DistanceCalculator the leaf distances are quantum estimates; without one
// they are exact.
class KdTreeSearcher : public NearestNeighborSearcher {
 public:
  explicit KdTreeSearcher(const MaterialDatabase& db, int leaf_size = 8,
                          const DistanceCalculator* calc = nullptr);
  KdTree::QueryResult nearest(const Vector& query,
                              std::uint64_t query_id) override;
  const KdTree& tree() const { return tree_; }

 private:
  KdTree tree_;
  const DistanceCalculator* calc_;
};

// Linear scan over all points through the same backend rules; the pruning
// baseline for call-count comparisons.
class BruteForceSearcher : public NearestNeighborSearcher {
 public:
  explicit BruteForceSearcher(const MaterialDatabase& db,
                              const DistanceCalculator* calc = nullptr);
  KdTree::QueryResult nearest(const Vector& query,
                              std::uint64_t query_id) override;

 private:
  const MaterialDatabase* db_;
  const DistanceCalculator* calc_;
};

struct DDState {
  std::vector<int> assignment;  // bar -> database index
  Eigen::VectorXd u;            // free displacements, mm
  Eigen::VectorXd eta;          // multipliers
  Eigen::VectorXd eps;          // mechanical strain per bar
  Eigen::VectorXd sigma;        // mechanical stress per bar, MPa
  int iteration = 0;
  long nn_calls = 0;
  // Global distance 1/2 sum_e w_e |V(z_e) - V(z*_e)|^2 after reassignment,
  // with exact scaled coordinates.
  double f_bar = 0;
};

DDState initial_state(const Assembly& asmb, const MaterialDatabase& db,
                      RngStream& rng);

// One fixed-point sweep: solve for u and eta with the shared factorization,
// update the mechanical states, reassign by nearest neighbor. Returns
// whether any assignment changed.
bool dd_iterate(DDState& state, const Assembly& asmb,
                const MaterialDatabase& db, NearestNeighborSearcher& nn);

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  double f_bar = 0;
  std::vector<double> f_bar_history;
  std::vector<int> assignment;
  Eigen::VectorXd eps_star, sigma_star;  // database-assigned states
  Eigen::VectorXd eps_mech, sigma_mech;  // equilibrium states
  Eigen::VectorXd u;
  long nn_calls = 0;
};

SolveReport dd_solve(const Assembly& asmb, const MaterialDatabase& db,
                     NearestNeighborSearcher& nn, std::uint64_t seed,
                     int max_iter = 500);

struct ReferenceSolution {
  Eigen::VectorXd u;
  Eigen::VectorXd eps;
  Eigen::VectorXd sigma;
  int iterations = 0;
};

// Converged nonlinear equilibrium (Newton on nodal displacements) with the
// Ramberg-Osgood law; residual below 1e-10 * |f|.
ReferenceSolution reference_solution(const Assembly& asmb,
                                     const RambergOsgoodParams& params);

// sqrt( sum w (sigma - ref)^2 / sum w ref^2 )
double rms_stress_error(const Eigen::VectorXd& sigma,
                        const Eigen::VectorXd& sigma_ref,
                        const Eigen::VectorXd& w);

}  // namespace qmitdd

#endif  // QMITDD_DD_SOLVER_HPP_
