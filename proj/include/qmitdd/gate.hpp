// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QMITDD_GATE_HPP_
#define QMITDD_GATE_HPP_

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace qmitdd {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Basis kinds come first; everything after kEcr is high-level and must be
// lowered by transpile before a noise model can be attached. SXDG is
// internal-only: it appears through gate folding and shares SX's noise class.
enum class GateKind {
  kI,
  kX,
  kSx,
  kSxdg,
  kRz,
  kEcr,
  kH,
  kRy,
  kCx,
  kCcx,
  kCswap,
  kStatePrep,
};

const char* gate_kind_name(GateKind kind);

struct Gate {
  GateKind kind;
  // qubits[0] is the most significant bit of the gate matrix index, matching
  // the circuit-level convention that qubit 0 is the basis-index MSB.
  // For kStatePrep: qubits = [controls..., target].
  std::vector<int> qubits;
  // RZ/RY: one angle. kStatePrep: 2^#controls angles, indexed by control
  // value. Others: empty.
  std::vector<double> angles;

  static Gate i(int q);
  static Gate x(int q);
  static Gate sx(int q);
  static Gate sxdg(int q);
  static Gate rz(double theta, int q);
  static Gate ecr(int a, int b);
  static Gate h(int q);
  static Gate ry(double theta, int q);
  static Gate cx(int control, int target);
  static Gate ccx(int c1, int c2, int target);
  static Gate cswap(int control, int a, int b);
  static Gate state_prep(std::vector<double> angles, std::vector<int> controls,
                         int target);

  int arity() const { return static_cast<int>(qubits.size()); }
  bool is_basis() const;
  // Dense 2^arity x 2^arity unitary in gate-local ordering.
  CMatrix matrix() const;
  // Validates target distinctness and angle-count/arity consistency.
  void check() const;
};

// Fixed single- and two-qubit matrices used across modules.
const CMatrix& mat_i();
const CMatrix& mat_x();
const CMatrix& mat_y();
const CMatrix& mat_z();
const CMatrix& mat_sx();
const CMatrix& mat_sxdg();
const CMatrix& mat_h();
const CMatrix& mat_ecr();
CMatrix mat_rz(double theta);
CMatrix mat_ry(double theta);

}  // namespace qmitdd

#endif  // QMITDD_GATE_HPP_
