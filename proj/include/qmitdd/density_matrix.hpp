// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QMITDD_DENSITY_MATRIX_HPP_
#define QMITDD_DENSITY_MATRIX_HPP_

#include <vector>

#include "qmitdd/gate.hpp"
#include "qmitdd/kraus.hpp"

namespace qmitdd {

// Dense density matrix over at most kMaxQubits qubits. Qubit 0 is the most
// significant bit of the basis index; "the first qubit" in measurement
// helpers always means qubit 0.
class DensityMatrix {
 public:
  static constexpr int kMaxQubits = 8;

  // Initialized to |0...0><0...0|.
  explicit DensityMatrix(int n_qubits);

  static DensityMatrix from_statevector(const CVector& v);
  static DensityMatrix from_matrix(int n_qubits, CMatrix rho);

  int n_qubits() const { return n_; }
  Eigen::Index dim() const { return rho_.rows(); }
  const CMatrix& data() const { return rho_; }

  double trace_error() const;
  double hermiticity_error() const;
  double min_eigenvalue() const;
  // Throws SimError when trace/Hermiticity deviate beyond 1e-12 or an
  // eigenvalue drops below -1e-10.
  void check_valid() const;

  // Sum of diagonal entries whose qubit-0 bit is 0. Diagonal round-off more
  // negative than -1e-10 is an error; smaller round-off is clamped.
  double prob_first_qubit_zero() const;

  // rho <- U rho U^H with u embedded on `qubits` (gate-local MSB first).
  void apply_unitary(const CMatrix& u, const std::vector<int>& qubits);
  void apply_unitary(const Gate& g);
  // rho <- sum_K K rho K^H.
  void apply_channel(const KrausChannel& ch, const std::vector<int>& qubits);
  // rho <- S(rho) for a superoperator in the packed (row*d + col) convention;
  // used by the simulator's fused gate+noise fast path.
  void apply_superop(const CMatrix& s, const std::vector<int>& qubits);

 private:
  int n_;
  CMatrix rho_;
};

}  // namespace qmitdd

#endif  // QMITDD_DENSITY_MATRIX_HPP_
