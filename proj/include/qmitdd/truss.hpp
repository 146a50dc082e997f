// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QMITDD_TRUSS_HPP_
#define QMITDD_TRUSS_HPP_

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

namespace qmitdd {

struct Bar {
  int n1 = 0, n2 = 0;  // node indices, 0-based
  double area = 0;     // mm^2
};

// Pin-jointed planar truss. Coordinates in mm, loads in N, stresses MPa.
struct TrussModel {
  std::vector<std::array<double, 2>> nodes;
  std::vector<Bar> bars;
  std::vector<std::array<bool, 2>> fixed;   // per node, x/y
  std::vector<std::array<double, 2>> loads;  // per node, N

  int n_nodes() const { return static_cast<int>(nodes.size()); }
  int n_bars() const { return static_cast<int>(bars.size()); }
  void validate() const;  // throws ConfigError
};

// Plain-text sections: NODES (id x y), BARS (id n1 n2 A),
// SUPPORTS (node fix-x fix-y), LOADS (node Fx Fy); ids are 1-based.
TrussModel load_truss(const std::string& path);

// Reduced linear system K = sum_e w_e B_e^T c B_e over free DOFs, factored
// once and shared by both solves of a data-driven iteration.
struct Assembly {
  double c = 0;                 // scalar scaling/modulus, MPa
  int n_free = 0;
  std::vector<int> free_index;  // 2*node+dir -> reduced index or -1
  Eigen::VectorXd length;       // per bar, mm
  Eigen::VectorXd weight;       // w_e = A_e * L_e, mm^3
  Eigen::MatrixXd b;            // n_bars x n_free strain-displacement rows
  Eigen::VectorXd f;            // reduced load vector, N
  Eigen::LLT<Eigen::MatrixXd> k_llt;

  Eigen::VectorXd solve_k(const Eigen::VectorXd& rhs) const {
    return k_llt.solve(rhs);
  }
};

Assembly assemble(const TrussModel& truss, double c);

}  // namespace qmitdd

#endif  // QMITDD_TRUSS_HPP_
