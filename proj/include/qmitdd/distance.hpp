// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QMITDD_DISTANCE_HPP_
#define QMITDD_DISTANCE_HPP_

#include <Eigen/Dense>
#include <vector>

#include "qmitdd/circuit.hpp"

namespace qmitdd {

using Vector = Eigen::VectorXd;

enum class Algorithm { kSwapBased, kHBased };

const char* algorithm_name(Algorithm a);

struct DistanceEstimate {
  double d_hat = 0;
  double p_hat = 0;
  double n_m = 0;  // 0 when the probability is exact, no sampling
  Algorithm algorithm = Algorithm::kHBased;
  double lambda = 1;  // noise scale; 0 marks an extrapolated estimate
  bool p_clamped = false;
  bool d_clamped = false;
  bool fit_fallback = false;
};

// Index-register width: smallest k >= 1 with 2^k >= dim.
int index_qubits(int dim);

double squared_distance(const Vector& v, const Vector& vp);

// Amplitudes of (|0>|v_hat> + |1>|vp_hat>)/sqrt(2), zero-padded per half
// to the next power of two. Oracle for the preparation circuits.
std::vector<double> psi_target_amplitudes(const Vector& v, const Vector& vp);

// State preparation on 1 + index_qubits(dim) qubits via a multiplexed-RY
// rotation tree; signs are carried in the rotation angles.
Circuit prepare_psi(const Vector& v, const Vector& vp);

// Single-qubit state (|V| |0> - |V'| |1>)/sqrt(Z), Z = |V|^2 + |V'|^2.
Circuit prepare_phi(const Vector& v, const Vector& vp);

Circuit swap_test_circuit(const Vector& v, const Vector& vp);
Circuit h_test_circuit(const Vector& v, const Vector& vp);

// Classical values of the measured probabilities.
double prob_swap_exact(const Vector& v, const Vector& vp);
double prob_h_exact(const Vector& v, const Vector& vp);

// d = 4 Z (p_s - 1/2)
double distance_from_ps(double p_s, double z);
// d = Z - 2 |V| |V'| (2 p_h - 1)
double distance_from_ph(double p_h, double norm_v, double norm_vp);

// Statistical error of the estimated distance at n_m measurements:
// eps_s^2 = 16 Z^2 p_s (1 - p_s) / n_m,
// eps_h^2 = 16 |V|^2 |V'|^2 p_h (1 - p_h) / n_m.
double theoretical_rmse(Algorithm a, const Vector& v, const Vector& vp,
                        double n_m);

}  // namespace qmitdd

#endif  // QMITDD_DISTANCE_HPP_
