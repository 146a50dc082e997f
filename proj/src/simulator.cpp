// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#include "qmitdd/simulator.hpp"

#include <complex>

#include "qmitdd/errors.hpp"

namespace qmitdd {
namespace {

int fixed_1q_index(GateKind kind) {
  switch (kind) {
    case GateKind::kI:
      return 0;
    case GateKind::kX:
      return 1;
    case GateKind::kSx:
      return 2;
    case GateKind::kSxdg:
      return 3;
    default:
      return -1;
  }
}

// Superoperator of a 2x2 Kraus set lifted onto one qubit of a pair;
// slot 0 is the more significant qubit.
CMatrix lifted_each_superop(const KrausChannel& ch, int slot) {
  CMatrix s = CMatrix::Zero(16, 16);
  CMatrix eye = CMatrix::Identity(2, 2);
  for (const CMatrix& k : ch.ops()) {
    CMatrix lifted(4, 4);
    if (slot == 0) {
      lifted.setZero();
      lifted.block(0, 0, 2, 2) = k(0, 0) * eye;
      lifted.block(0, 2, 2, 2) = k(0, 1) * eye;
      lifted.block(2, 0, 2, 2) = k(1, 0) * eye;
      lifted.block(2, 2, 2, 2) = k(1, 1) * eye;
    } else {
      lifted.setZero();
      lifted.block(0, 0, 2, 2) = k;
      lifted.block(2, 2, 2, 2) = k;
    }
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        for (int rp = 0; rp < 4; ++rp)
          for (int cp = 0; cp < 4; ++cp)
            s(r * 4 + c, rp * 4 + cp) +=
                lifted(r, rp) * std::conj(lifted(c, cp));
  }
  return s;
}

}  // namespace

Engine::Engine(const NoiseModel* noise, RunOptions options)
    : noise_(noise), options_(options) {
  if (!noise_ || !options_.fuse_superops) return;
  const Gate protos[4] = {Gate::i(0), Gate::x(0), Gate::sx(0), Gate::sxdg(0)};
  for (int i = 0; i < 4; ++i) {
    CMatrix s = superop_from_unitary(protos[i].matrix());
    for (const KrausChannel& ch : noise_->one_qubit_chain())
      s = ch.superop() * s;
    fused_1q_[i] = s;
  }
  CMatrix s = superop_from_unitary(Gate::ecr(0, 1).matrix());
  for (const KrausChannel& ch : noise_->two_qubit_pair_chain())
    s = ch.superop() * s;
  for (const KrausChannel& ch : noise_->two_qubit_each_chain())
    s = lifted_each_superop(ch, 0) * s;
  for (const KrausChannel& ch : noise_->two_qubit_each_chain())
    s = lifted_each_superop(ch, 1) * s;
  fused_ecr_ = s;
}

void Engine::apply_gate(DensityMatrix& rho, const Gate& g) const {
  if (g.kind == GateKind::kRz || !noise_) {
    rho.apply_unitary(g);
    return;
  }
  if (options_.fuse_superops) {
    int idx = fixed_1q_index(g.kind);
    if (idx >= 0)
      rho.apply_superop(fused_1q_[idx], g.qubits);
    else
      rho.apply_superop(fused_ecr_, g.qubits);
    return;
  }
  rho.apply_unitary(g);
  if (g.kind == GateKind::kEcr) {
    for (const KrausChannel& ch : noise_->two_qubit_pair_chain())
      rho.apply_channel(ch, g.qubits);
    for (int q : g.qubits)
      for (const KrausChannel& ch : noise_->two_qubit_each_chain())
        rho.apply_channel(ch, {q});
  } else {
    for (const KrausChannel& ch : noise_->one_qubit_chain())
      rho.apply_channel(ch, g.qubits);
  }
}

DensityMatrix Engine::run(const BasisCircuit& circuit) const {
  DensityMatrix rho(circuit.n_qubits);
  for (const Gate& g : circuit.gates) {
    apply_gate(rho, g);
    if (options_.check_invariants) rho.check_valid();
  }
  return rho;
}

double Engine::prob_zero(const BasisCircuit& circuit) const {
  return run(circuit).prob_first_qubit_zero();
}

std::pair<DensityMatrix, double> run_circuit(const BasisCircuit& circuit,
                                             const NoiseModel* noise,
                                             RunOptions options) {
  Engine engine(noise, options);
  DensityMatrix rho = engine.run(circuit);
  double p = rho.prob_first_qubit_zero();
  return {std::move(rho), p};
}

DensityMatrix run_unitary(const Circuit& circuit) {
  DensityMatrix rho(circuit.n_qubits);
  for (const Gate& g : circuit.gates) rho.apply_unitary(g);
  return rho;
}

}  // namespace qmitdd
