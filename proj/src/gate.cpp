// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#include "qmitdd/gate.hpp"

#include <cmath>
#include <complex>
#include <set>

#include "qmitdd/errors.hpp"

namespace qmitdd {

using std::complex;
namespace {
constexpr complex<double> kImag{0.0, 1.0};
}

const char* gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::kI: return "I";
    case GateKind::kX: return "X";
    case GateKind::kSx: return "SX";
    case GateKind::kSxdg: return "SXDG";
    case GateKind::kRz: return "RZ";
    case GateKind::kEcr: return "ECR";
    case GateKind::kH: return "H";
    case GateKind::kRy: return "RY";
    case GateKind::kCx: return "CX";
    case GateKind::kCcx: return "CCX";
    case GateKind::kCswap: return "CSWAP";
    case GateKind::kStatePrep: return "SPREP";
  }
  return "?";
}

Gate Gate::i(int q) { return {GateKind::kI, {q}, {}}; }
Gate Gate::x(int q) { return {GateKind::kX, {q}, {}}; }
Gate Gate::sx(int q) { return {GateKind::kSx, {q}, {}}; }
Gate Gate::sxdg(int q) { return {GateKind::kSxdg, {q}, {}}; }
Gate Gate::rz(double theta, int q) { return {GateKind::kRz, {q}, {theta}}; }
Gate Gate::ecr(int a, int b) { return {GateKind::kEcr, {a, b}, {}}; }
Gate Gate::h(int q) { return {GateKind::kH, {q}, {}}; }
Gate Gate::ry(double theta, int q) { return {GateKind::kRy, {q}, {theta}}; }
Gate Gate::cx(int control, int target) {
  return {GateKind::kCx, {control, target}, {}};
}
Gate Gate::ccx(int c1, int c2, int target) {
  return {GateKind::kCcx, {c1, c2, target}, {}};
}
Gate Gate::cswap(int control, int a, int b) {
  return {GateKind::kCswap, {control, a, b}, {}};
}
Gate Gate::state_prep(std::vector<double> angles, std::vector<int> controls,
                      int target) {
  Gate g{GateKind::kStatePrep, std::move(controls), std::move(angles)};
  g.qubits.push_back(target);
  return g;
}

bool Gate::is_basis() const {
  switch (kind) {
    case GateKind::kI:
    case GateKind::kX:
    case GateKind::kSx:
    case GateKind::kSxdg:
    case GateKind::kRz:
    case GateKind::kEcr:
      return true;
    default:
      return false;
  }
}

void Gate::check() const {
  std::set<int> uniq(qubits.begin(), qubits.end());
  if (uniq.size() != qubits.size())
    throw SimError(std::string("gate ") + gate_kind_name(kind) +
                   " has repeated target qubits");
  for (int q : qubits)
    if (q < 0) throw SimError("negative qubit index");

  std::size_t want_angles = 0;
  std::size_t want_arity = 1;
  switch (kind) {
    case GateKind::kRz:
    case GateKind::kRy:
      want_angles = 1;
      break;
    case GateKind::kEcr:
    case GateKind::kCx:
      want_arity = 2;
      break;
    case GateKind::kCcx:
    case GateKind::kCswap:
      want_arity = 3;
      break;
    case GateKind::kStatePrep:
      want_arity = qubits.size();
      want_angles = std::size_t{1} << (qubits.size() - 1);
      break;
    default:
      break;
  }
  if (qubits.size() != want_arity)
    throw SimError(std::string("gate ") + gate_kind_name(kind) +
                   " has wrong arity");
  if (angles.size() != want_angles)
    throw SimError(std::string("gate ") + gate_kind_name(kind) +
                   " has wrong angle count");
}

const CMatrix& mat_i() {
  static const CMatrix m = CMatrix::Identity(2, 2);
  return m;
}
const CMatrix& mat_x() {
  static const CMatrix m = [] {
    CMatrix v(2, 2);
    v << 0, 1, 1, 0;
    return v;
  }();
  return m;
}
const CMatrix& mat_y() {
  static const CMatrix m = [] {
    CMatrix v(2, 2);
    v << 0, -kImag, kImag, 0;
    return v;
  }();
  return m;
}
const CMatrix& mat_z() {
  static const CMatrix m = [] {
    CMatrix v(2, 2);
    v << 1, 0, 0, -1;
    return v;
  }();
  return m;
}
const CMatrix& mat_sx() {
  static const CMatrix m = [] {
    CMatrix v(2, 2);
    v << 0.5 + 0.5 * kImag, 0.5 - 0.5 * kImag, 0.5 - 0.5 * kImag,
        0.5 + 0.5 * kImag;
    return v;
  }();
  return m;
}
const CMatrix& mat_sxdg() {
  static const CMatrix m = mat_sx().adjoint();
  return m;
}
const CMatrix& mat_h() {
  static const CMatrix m = [] {
    const double s = 1.0 / std::sqrt(2.0);
    CMatrix v(2, 2);
    v << s, s, s, -s;
    return v;
  }();
  return m;
}
const CMatrix& mat_ecr() {
  // (IX - XY)/sqrt(2) with the first tensor factor on the first-listed qubit.
  static const CMatrix m = [] {
    CMatrix v = CMatrix::Zero(4, 4);
    const double s = 1.0 / std::sqrt(2.0);
    v.block(0, 0, 2, 2) = mat_x();
    v.block(2, 2, 2, 2) = mat_x();
    v.block(0, 2, 2, 2) = -mat_y();
    v.block(2, 0, 2, 2) = -mat_y();
    return CMatrix(s * v);
  }();
  return m;
}
CMatrix mat_rz(double theta) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = std::exp(-kImag * (theta / 2.0));
  m(1, 1) = std::exp(kImag * (theta / 2.0));
  return m;
}
CMatrix mat_ry(double theta) {
  CMatrix m(2, 2);
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  m << c, -s, s, c;
  return m;
}

CMatrix Gate::matrix() const {
  switch (kind) {
    case GateKind::kI: return mat_i();
    case GateKind::kX: return mat_x();
    case GateKind::kSx: return mat_sx();
    case GateKind::kSxdg: return mat_sxdg();
    case GateKind::kRz: return mat_rz(angles[0]);
    case GateKind::kEcr: return mat_ecr();
    case GateKind::kH: return mat_h();
    case GateKind::kRy: return mat_ry(angles[0]);
    case GateKind::kCx: {
      CMatrix m = CMatrix::Identity(4, 4);
      m(2, 2) = 0; m(3, 3) = 0; m(2, 3) = 1; m(3, 2) = 1;
      return m;
    }
    case GateKind::kCcx: {
      CMatrix m = CMatrix::Identity(8, 8);
      m(6, 6) = 0; m(7, 7) = 0; m(6, 7) = 1; m(7, 6) = 1;
      return m;
    }
    case GateKind::kCswap: {
      CMatrix m = CMatrix::Identity(8, 8);
      m(5, 5) = 0; m(6, 6) = 0; m(5, 6) = 1; m(6, 5) = 1;
      return m;
    }
    case GateKind::kStatePrep: {
      // Block-diagonal RY(theta_v) over the control value v.
      const int dim = 1 << qubits.size();
      CMatrix m = CMatrix::Zero(dim, dim);
      for (std::size_t v = 0; v < angles.size(); ++v)
        m.block(2 * v, 2 * v, 2, 2) = mat_ry(angles[v]);
      return m;
    }
  }
  throw SimError("unknown gate kind");
}

}  // namespace qmitdd
