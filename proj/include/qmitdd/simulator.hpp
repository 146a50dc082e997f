// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QMITDD_SIMULATOR_HPP_
#define QMITDD_SIMULATOR_HPP_

#include <utility>

#include "qmitdd/circuit.hpp"
#include "qmitdd/density_matrix.hpp"
#include "qmitdd/noise_model.hpp"

namespace qmitdd {

struct RunOptions {
  // Validate trace/Hermiticity/positivity after every operation.
  bool check_invariants = false;
  // Apply gate + noise chain as one cached superoperator per gate kind.
  // The unfused path applies the unitary and each Kraus channel in turn;
  // both paths must agree (tested) and the fused one is the fast default.
  bool fuse_superops = true;
};

// Density-matrix executor for basis circuits, optionally noisy. The noise
// model is borrowed and must outlive the engine.
class Engine {
 public:
  explicit Engine(const NoiseModel* noise = nullptr, RunOptions options = {});

  DensityMatrix run(const BasisCircuit& circuit) const;
  // Exact probability of measuring qubit 0 in |0>.
  double prob_zero(const BasisCircuit& circuit) const;

  const NoiseModel* noise() const { return noise_; }

 private:
  void apply_gate(DensityMatrix& rho, const Gate& g) const;

  const NoiseModel* noise_;
  RunOptions options_;
  CMatrix fused_1q_[4];  // I, X, SX, SXDG
  CMatrix fused_ecr_;
};

// One-shot convenience wrapper around Engine.
std::pair<DensityMatrix, double> run_circuit(const BasisCircuit& circuit,
                                             const NoiseModel* noise,
                                             RunOptions options = {});

// Noiseless execution of a high-level circuit (no decomposition).
DensityMatrix run_unitary(const Circuit& circuit);

}  // namespace qmitdd

#endif  // QMITDD_SIMULATOR_HPP_
