// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QMITDD_KRAUS_HPP_
#define QMITDD_KRAUS_HPP_

#include <vector>

#include "qmitdd/gate.hpp"

namespace qmitdd {

// Trace-preserving Kraus channel on 1 or 2 qubits. Trace preservation
// (sum K^H K = I within 1e-10) is enforced at construction.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<CMatrix> ops);

  static KrausChannel identity(int arity);
  // Recovers a Kraus set from a Choi matrix by eigendecomposition,
  // dropping eigenvalues below eig_tol. The Choi convention is
  // Lambda[(i,k),(j,l)] = sum_K K(k,i) conj(K(l,j)) with row packing i*d+k,
  // i.e. evolution rho'(k,l) = sum_ij rho(i,j) Lambda[(i,k),(j,l)].
  static KrausChannel from_choi(const CMatrix& lambda, double eig_tol = 1e-12);

  int arity() const { return arity_; }
  Eigen::Index dim() const { return ops_.front().rows(); }
  const std::vector<CMatrix>& ops() const { return ops_; }

  double completeness_error() const;
  CMatrix choi() const;
  // Superoperator with packed index (row*d + col): S = sum_K kron(K, conj K).
  CMatrix superop() const;

 private:
  std::vector<CMatrix> ops_;
  int arity_;
};

CMatrix superop_from_unitary(const CMatrix& u);

}  // namespace qmitdd

#endif  // QMITDD_KRAUS_HPP_
