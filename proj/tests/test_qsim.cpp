// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "qmitdd/circuit.hpp"
#include "qmitdd/density_matrix.hpp"
#include "qmitdd/errors.hpp"
#include "qmitdd/noise_model.hpp"
#include "qmitdd/rng.hpp"
#include "qmitdd/simulator.hpp"

using namespace qmitdd;
using qmitdd::testing::circuit_unitary;
using qmitdd::testing::embed;

namespace {

CMatrix random_density(int n, RngStream& rng) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  CMatrix a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      a(i, j) = std::complex<double>(rng.normal(), rng.normal());
  CMatrix rho = a * a.adjoint();
  rho /= rho.trace();
  return rho;
}

BasisCircuit random_basis_circuit(int n_qubits, int n_gates, RngStream& rng) {
  BasisCircuit c;
  c.n_qubits = n_qubits;
  for (int i = 0; i < n_gates; ++i) {
    switch (rng.uniform_int(6)) {
      case 0:
        c.push(Gate::i(static_cast<int>(rng.uniform_int(n_qubits))), i);
        break;
      case 1:
        c.push(Gate::x(static_cast<int>(rng.uniform_int(n_qubits))), i);
        break;
      case 2:
        c.push(Gate::sx(static_cast<int>(rng.uniform_int(n_qubits))), i);
        break;
      case 3:
        c.push(Gate::sxdg(static_cast<int>(rng.uniform_int(n_qubits))), i);
        break;
      case 4:
        c.push(Gate::rz(2 * M_PI * rng.uniform() - M_PI,
                        static_cast<int>(rng.uniform_int(n_qubits))),
               i);
        break;
      default: {
        int a = static_cast<int>(rng.uniform_int(n_qubits));
        int b = static_cast<int>(rng.uniform_int(n_qubits - 1));
        if (b >= a) ++b;
        c.push(Gate::ecr(a, b), i);
        break;
      }
    }
  }
  return c;
}

DeviceCalibration test_calibration() {
  DeviceCalibration cal;
  cal.t1 = 280;
  cal.t2 = 127;
  cal.tg_1q = 0.06;
  cal.tg_2q = 0.66;
  cal.eps_g_1q = 2.77e-4;
  cal.eps_g_2q = 8.56e-3;
  cal.q_e = 0;
  return cal;
}

// Reference noisy evolution: unitary, then the model's channels in the
// engine's documented order, everything through the entry-wise embed oracle.
CMatrix oracle_noisy_step(CMatrix rho, const Gate& g, const NoiseModel& nm,
                          int n) {
  auto apply_kraus = [&](const CMatrix& in, const KrausChannel& ch,
                         const std::vector<int>& qs) {
    CMatrix out = CMatrix::Zero(in.rows(), in.cols());
    for (const CMatrix& k : ch.ops()) {
      CMatrix ke = embed(k, qs, n);
      out += ke * in * ke.adjoint();
    }
    return out;
  };
  CMatrix ue = embed(g.matrix(), g.qubits, n);
  rho = ue * rho * ue.adjoint();
  if (g.kind == GateKind::kRz) return rho;
  if (g.kind == GateKind::kEcr) {
    for (const KrausChannel& ch : nm.two_qubit_pair_chain())
      rho = apply_kraus(rho, ch, g.qubits);
    for (int q : g.qubits)
      for (const KrausChannel& ch : nm.two_qubit_each_chain())
        rho = apply_kraus(rho, ch, {q});
  } else {
    for (const KrausChannel& ch : nm.one_qubit_chain())
      rho = apply_kraus(rho, ch, g.qubits);
  }
  return rho;
}

}  // namespace

TEST_SUITE("qsim") {

TEST_CASE("single qubit embedding matches kronecker products") {
  RngStream rng(21, 0);
  CMatrix rho0 = random_density(3, rng);
  const CMatrix eye = CMatrix::Identity(2, 2);
  const CMatrix u = mat_sx();
  auto kron = [](const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j)
        out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
  };
  const CMatrix fulls[3] = {kron(u, kron(eye, eye)), kron(eye, kron(u, eye)),
                            kron(eye, kron(eye, u))};
  for (int q = 0; q < 3; ++q) {
    DensityMatrix dm = DensityMatrix::from_matrix(3, rho0);
    dm.apply_unitary(u, {q});
    CMatrix expect = fulls[q] * rho0 * fulls[q].adjoint();
    CHECK((dm.data() - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("two qubit embedding handles order and gaps") {
  RngStream rng(22, 0);
  CMatrix rho0 = random_density(3, rng);
  const CMatrix u = mat_ecr();
  for (std::vector<int> qs :
       {std::vector<int>{0, 2}, {2, 0}, {1, 0}, {0, 1}, {2, 1}}) {
    DensityMatrix dm = DensityMatrix::from_matrix(3, rho0);
    dm.apply_unitary(u, qs);
    CMatrix full = embed(u, qs, 3);
    CMatrix expect = full * rho0 * full.adjoint();
    CHECK((dm.data() - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("noiseless engine matches the dense unitary oracle") {
  RngStream rng(23, 0);
  Engine engine;
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + static_cast<int>(rng.uniform_int(3));
    BasisCircuit c = random_basis_circuit(n, 30, rng);
    DensityMatrix rho = engine.run(c);
    CMatrix u = circuit_unitary(c);
    CVector psi0 = CVector::Zero(u.rows());
    psi0(0) = 1;
    CVector psi = u * psi0;
    CMatrix expect = psi * psi.adjoint();
    CHECK((rho.data() - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("apply_channel agrees with the channel superoperator") {
  RngStream rng(24, 0);
  KrausChannel thermal = thermal_relaxation_channel(280, 127, 0.66, 0.02);
  KrausChannel depol2 = depolarizing_channel_2q(0.05);
  CMatrix rho0 = random_density(3, rng);
  for (int q = 0; q < 3; ++q) {
    DensityMatrix a = DensityMatrix::from_matrix(3, rho0);
    a.apply_channel(thermal, {q});
    DensityMatrix b = DensityMatrix::from_matrix(3, rho0);
    b.apply_superop(thermal.superop(), {q});
    CHECK((a.data() - b.data()).cwiseAbs().maxCoeff() < 1e-12);
  }
  for (std::vector<int> qs : {std::vector<int>{0, 2}, {2, 0}, {1, 2}}) {
    DensityMatrix a = DensityMatrix::from_matrix(3, rho0);
    a.apply_channel(depol2, qs);
    DensityMatrix b = DensityMatrix::from_matrix(3, rho0);
    b.apply_superop(depol2.superop(), qs);
    CHECK((a.data() - b.data()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("noisy engine matches the kraus oracle, fused and unfused") {
  RngStream rng(25, 0);
  NoiseModel nm = NoiseModel::from_calibration(test_calibration());
  Engine fused(&nm, {false, true});
  Engine unfused(&nm, {false, false});
  for (int trial = 0; trial < 6; ++trial) {
    int n = 2 + static_cast<int>(rng.uniform_int(2));
    BasisCircuit c = random_basis_circuit(n, 20, rng);
    const Eigen::Index dim = Eigen::Index(1) << n;
    CMatrix oracle = CMatrix::Zero(dim, dim);
    oracle(0, 0) = 1;
    for (const Gate& g : c.gates) oracle = oracle_noisy_step(oracle, g, nm, n);
    DensityMatrix a = fused.run(c);
    DensityMatrix b = unfused.run(c);
    CHECK((a.data() - oracle).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((b.data() - oracle).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(fused.prob_zero(c) == doctest::Approx(unfused.prob_zero(c)).epsilon(1e-12));
  }
}

TEST_CASE("invariants hold after every operation of a noisy run") {
  RngStream rng(26, 0);
  NoiseModel nm = NoiseModel::from_calibration(test_calibration());
  Engine engine(&nm, {true, true});
  for (int trial = 0; trial < 5; ++trial) {
    BasisCircuit c = random_basis_circuit(4, 60, rng);
    DensityMatrix rho = engine.run(c);  // throws if any invariant breaks
    CHECK(rho.trace_error() < 1e-12);
    CHECK(rho.hermiticity_error() < 1e-12);
    CHECK(rho.min_eigenvalue() > -1e-10);
  }
}

TEST_CASE("depolarizing identity folds follow the closed form") {
  const double q = 0.03;
  NoiseModel nm = NoiseModel::depolarizing_only(q, 0);
  Engine engine(&nm);
  // Prep = X so p0 is well away from both 1/2 and the endpoints.
  BasisCircuit prep;
  prep.n_qubits = 1;
  prep.push(Gate::x(0), 0);
  const double p0 = engine.prob_zero(prep);
  CHECK(p0 == doctest::Approx(q / 2).epsilon(1e-12));
  for (int lambda = 1; lambda <= 21; ++lambda) {
    BasisCircuit c = prep;
    for (int i = 0; i < lambda; ++i) c.push(Gate::i(0), 1 + i);
    double expect = 0.5 + std::pow(1 - q, lambda) * (p0 - 0.5);
    CHECK(std::abs(engine.prob_zero(c) - expect) < 1e-10);
  }
}

TEST_CASE("register capacity is enforced") {
  CHECK_THROWS_AS(DensityMatrix(DensityMatrix::kMaxQubits + 1), SimError);
  CHECK_NOTHROW(DensityMatrix(DensityMatrix::kMaxQubits));
}

TEST_CASE("prob_first_qubit_zero reads qubit 0 as the index msb") {
  // |10> has qubit 0 in |1>.
  CVector psi = CVector::Zero(4);
  psi(2) = 1;
  CHECK(DensityMatrix::from_statevector(psi).prob_first_qubit_zero() ==
        doctest::Approx(0.0));
  // (|00> + |10>)/sqrt(2) is an even split on qubit 0.
  CVector plus = CVector::Zero(4);
  plus(0) = plus(2) = 1 / std::sqrt(2.0);
  CHECK(DensityMatrix::from_statevector(plus).prob_first_qubit_zero() ==
        doctest::Approx(0.5));
}

TEST_CASE("check_valid rejects corrupted states") {
  CMatrix bad_trace = CMatrix::Identity(2, 2);  // trace 2
  CHECK_THROWS_AS(DensityMatrix::from_matrix(1, bad_trace).check_valid(),
                  SimError);
  CMatrix bad_herm(2, 2);
  bad_herm << 0.5, 0.1, 0.3, 0.5;  // rho(0,1) != conj(rho(1,0))
  CHECK_THROWS_AS(DensityMatrix::from_matrix(1, bad_herm).check_valid(),
                  SimError);
  CMatrix negative(2, 2);
  negative << 1.5, 0, 0, -0.5;  // eigenvalue -0.5
  CHECK_THROWS_AS(DensityMatrix::from_matrix(1, negative).check_valid(),
                  SimError);
}

TEST_CASE("run_unitary executes composite gates directly") {
  Circuit c;
  c.n_qubits = 2;
  c.gates.push_back(Gate::h(0));
  c.gates.push_back(Gate::cx(0, 1));
  DensityMatrix rho = run_unitary(c);
  // Bell state: diagonal 1/2 on |00> and |11>, coherence 1/2.
  CHECK(std::abs(rho.data()(0, 0).real() - 0.5) < 1e-12);
  CHECK(std::abs(rho.data()(3, 3).real() - 0.5) < 1e-12);
  CHECK(std::abs(rho.data()(0, 3).real() - 0.5) < 1e-12);
}

}  // TEST_SUITE
