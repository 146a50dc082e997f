// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QMITDD_TRANSPILE_HPP_
#define QMITDD_TRANSPILE_HPP_

#include <string>

#include "qmitdd/circuit.hpp"

namespace qmitdd {

// Lowers a circuit to the native basis {I, X, SX, SXDG, RZ, ECR}.
// Adjacent RZ gates on the same qubit are merged and zero rotations are
// dropped; every emitted gate records the index of the source gate it
// descends from.
BasisCircuit decompose(const Circuit& circuit);

// Inverse of a single basis gate (all basis inverses stay in the basis).
Gate basis_inverse(const Gate& g);

// Global folding: each gate G becomes G followed by i repetitions of
// (G^-1, G), scaling the noise factor to lambda = 1 + 2i.
BasisCircuit fold(const BasisCircuit& circuit, int i);

struct GateCensus {
  long m_s = 0;  // noisy single-qubit gates (I, X, SX, SXDG)
  long m_t = 0;  // two-qubit gates (ECR)
  long m_d = 0;  // noisy-operation weight, m_s + 2 * m_t
};

GateCensus gate_census(const BasisCircuit& circuit);

// Longest dependency chain over qubits; RZ counts like any other gate.
int circuit_depth(const BasisCircuit& circuit);

// One gate per line: "KIND q0 [q1 q2] [theta]".
std::string dump_circuit(const BasisCircuit& circuit);

}  // namespace qmitdd

#endif  // QMITDD_TRANSPILE_HPP_
