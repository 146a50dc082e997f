// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QMITDD_TESTS_ORACLES_HPP_
#define QMITDD_TESTS_ORACLES_HPP_

// Independent dense linear-algebra oracles shared by the test suites.
// They deliberately avoid the library's own embedding and execution code.

#include <cmath>
#include <complex>
#include <vector>

#include "qmitdd/circuit.hpp"
#include "qmitdd/gate.hpp"

namespace qmitdd {
namespace testing {

// Entry-wise lift of a gate-local matrix onto the full register: qubit q is
// index bit (n-1-q) and qubits[0] the most significant gate-local bit.
inline CMatrix embed(const CMatrix& u, const std::vector<int>& qubits, int n) {
  const int a = static_cast<int>(qubits.size());
  const Eigen::Index dim = Eigen::Index(1) << n;
  auto sub_index = [&](Eigen::Index full) {
    Eigen::Index s = 0;
    for (int t = 0; t < a; ++t) {
      Eigen::Index bit = (full >> (n - 1 - qubits[static_cast<size_t>(t)])) & 1;
      s |= bit << (a - 1 - t);
    }
    return s;
  };
  auto rest_mask = [&](Eigen::Index full) {
    Eigen::Index r = full;
    for (int t = 0; t < a; ++t)
      r &= ~(Eigen::Index(1) << (n - 1 - qubits[static_cast<size_t>(t)]));
    return r;
  };
  CMatrix out = CMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      if (rest_mask(i) == rest_mask(j))
        out(i, j) = u(sub_index(i), sub_index(j));
  return out;
}

template <typename CircuitLike>
CMatrix circuit_unitary(const CircuitLike& c) {
  const Eigen::Index dim = Eigen::Index(1) << c.n_qubits;
  CMatrix u = CMatrix::Identity(dim, dim);
  for (const Gate& g : c.gates) u = embed(g.matrix(), g.qubits, c.n_qubits) * u;
  return u;
}

// Max-norm distance of b from a up to a global phase, using the largest
// entry of a as the phase anchor.
inline double phase_distance(const CMatrix& a, const CMatrix& b) {
  Eigen::Index r = 0, c = 0;
  a.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(a(r, c)) == 0) return (a - b).cwiseAbs().maxCoeff();
  std::complex<double> phase = b(r, c) / a(r, c);
  double mag = std::abs(phase);
  if (mag == 0) return (a - b).cwiseAbs().maxCoeff();
  phase /= mag;  // compare up to a pure phase, never rescale magnitude
  return (b - phase * a).cwiseAbs().maxCoeff();
}

}  // namespace testing
}  // namespace qmitdd

#endif  // QMITDD_TESTS_ORACLES_HPP_
