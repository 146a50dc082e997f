// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#include "qmitdd/distance.hpp"

#include <cmath>

#include "qmitdd/errors.hpp"

namespace qmitdd {
namespace {

void check_pair(const Vector& v, const Vector& vp) {
  if (v.size() < 1 || vp.size() < 1)
    throw SimError("data vectors must have dimension >= 1");
  if (v.size() != vp.size())
    throw SimError("data vectors must have equal dimension");
  if (!v.allFinite() || !vp.allFinite())
    throw SimError("data vectors must be finite");
}

// Rotation-tree angles for a real amplitude vector of length 2^L.
// levels[l] holds 2^l angles; qubit l rotates conditioned on qubits 0..l-1.
std::vector<std::vector<double>> rotation_tree(std::vector<double> amps) {
  int levels = 0;
  while ((size_t{1} << (levels + 1)) < amps.size()) ++levels;
  ++levels;  // amps.size() == 2^levels
  std::vector<std::vector<double>> theta(static_cast<size_t>(levels));
  std::vector<double> u = std::move(amps);
  for (int l = levels - 1; l >= 0; --l) {
    size_t m = size_t{1} << l;
    std::vector<double> up(m);
    theta[static_cast<size_t>(l)].resize(m);
    for (size_t j = 0; j < m; ++j) {
      double left = u[2 * j], right = u[2 * j + 1];
      up[j] = std::hypot(left, right);
      theta[static_cast<size_t>(l)][j] = 2.0 * std::atan2(right, left);
    }
    u = std::move(up);
  }
  return theta;
}

// Pushes the tree as StatePrep gates with qubit indices shifted by `base`.
void push_prep(Circuit& c, const std::vector<std::vector<double>>& theta,
               int base) {
  for (size_t l = 0; l < theta.size(); ++l) {
    std::vector<int> controls;
    for (size_t j = 0; j < l; ++j)
      controls.push_back(base + static_cast<int>(j));
    c.push(Gate::state_prep(theta[l], controls, base + static_cast<int>(l)));
  }
}

}  // namespace

const char* algorithm_name(Algorithm a) {
  return a == Algorithm::kSwapBased ? "swap" : "h";
}

int index_qubits(int dim) {
  int k = 1;
  while ((1 << k) < dim) ++k;
  return k;
}

double squared_distance(const Vector& v, const Vector& vp) {
  check_pair(v, vp);
  return (v - vp).squaredNorm();
}

std::vector<double> psi_target_amplitudes(const Vector& v, const Vector& vp) {
  check_pair(v, vp);
  double nv = v.norm(), nvp = vp.norm();
  if (nv == 0.0 || nvp == 0.0)
    throw SimError("degenerate input: zero-norm data vector");
  int k = index_qubits(static_cast<int>(v.size()));
  size_t half = size_t{1} << k;
  std::vector<double> amps(2 * half, 0.0);
  double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < v.size(); ++i) {
    amps[static_cast<size_t>(i)] = s * v[i] / nv;
    amps[half + static_cast<size_t>(i)] = s * vp[i] / nvp;
  }
  return amps;
}

Circuit prepare_psi(const Vector& v, const Vector& vp) {
  std::vector<double> amps = psi_target_amplitudes(v, vp);
  int k = index_qubits(static_cast<int>(v.size()));
  Circuit c;
  c.n_qubits = 1 + k;
  push_prep(c, rotation_tree(std::move(amps)), 0);
  return c;
}

Circuit prepare_phi(const Vector& v, const Vector& vp) {
  check_pair(v, vp);
  double nv = v.norm(), nvp = vp.norm();
  if (nv == 0.0 && nvp == 0.0)
    throw SimError("degenerate input: Z = 0");
  Circuit c;
  c.n_qubits = 1;
  c.push(Gate::ry(2.0 * std::atan2(-nvp, nv), 0));
  return c;
}

Circuit swap_test_circuit(const Vector& v, const Vector& vp) {
  std::vector<double> amps = psi_target_amplitudes(v, vp);
  int k = index_qubits(static_cast<int>(v.size()));
  Circuit c;
  c.n_qubits = 3 + k;
  c.push(Gate::ry(2.0 * std::atan2(-vp.norm(), v.norm()), 1));
  push_prep(c, rotation_tree(std::move(amps)), 2);
  c.push(Gate::h(0));
  c.push(Gate::cswap(0, 1, 2));
  c.push(Gate::h(0));
  return c;
}

Circuit h_test_circuit(const Vector& v, const Vector& vp) {
  Circuit c = prepare_psi(v, vp);
  c.push(Gate::h(0));
  return c;
}

double prob_swap_exact(const Vector& v, const Vector& vp) {
  double z = v.squaredNorm() + vp.squaredNorm();
  return 0.5 + squared_distance(v, vp) / (4.0 * z);
}

double prob_h_exact(const Vector& v, const Vector& vp) {
  check_pair(v, vp);
  return 0.5 + v.dot(vp) / (2.0 * v.norm() * vp.norm());
}

double distance_from_ps(double p_s, double z) {
  return 4.0 * z * (p_s - 0.5);
}

double distance_from_ph(double p_h, double norm_v, double norm_vp) {
  double z = norm_v * norm_v + norm_vp * norm_vp;
  return z - 2.0 * norm_v * norm_vp * (2.0 * p_h - 1.0);
}

double theoretical_rmse(Algorithm a, const Vector& v, const Vector& vp,
                        double n_m) {
  if (n_m < 1) throw SimError("n_m must be >= 1");
  if (a == Algorithm::kSwapBased) {
    double z = v.squaredNorm() + vp.squaredNorm();
    double p = prob_swap_exact(v, vp);
    return 4.0 * z * std::sqrt(p * (1.0 - p) / n_m);
  }
  double p = prob_h_exact(v, vp);
  return 4.0 * v.norm() * vp.norm() * std::sqrt(p * (1.0 - p) / n_m);
}

}  // namespace qmitdd
