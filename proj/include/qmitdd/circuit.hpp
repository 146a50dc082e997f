// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QMITDD_CIRCUIT_HPP_
#define QMITDD_CIRCUIT_HPP_

#include <vector>

#include "qmitdd/errors.hpp"
#include "qmitdd/gate.hpp"

namespace qmitdd {

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;

  void push(Gate g) {
    g.check();
    for (int q : g.qubits)
      if (q >= n_qubits)
        throw SimError("gate qubit index exceeds circuit width");
    gates.push_back(std::move(g));
  }
};

// Output of transpile::decompose. Only basis kinds; provenance maps each
// basis gate back to the index of the source gate it came from.
struct BasisCircuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
  std::vector<int> provenance;

  void push(Gate g, int source_index) {
    g.check();
    if (!g.is_basis()) throw SimError("non-basis gate in BasisCircuit");
    for (int q : g.qubits)
      if (q >= n_qubits)
        throw SimError("gate qubit index exceeds circuit width");
    gates.push_back(std::move(g));
    provenance.push_back(source_index);
  }
};

}  // namespace qmitdd

#endif  // QMITDD_CIRCUIT_HPP_
