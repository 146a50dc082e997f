// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#include "qmitdd/transpile.hpp"

#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

#include "qmitdd/errors.hpp"

namespace qmitdd {
namespace {

constexpr double kPi = 3.14159265358979323846;
// RZ angles this close to a multiple of 2*pi are dropped.
constexpr double kAngleTol = 1e-12;
// Euler-angle branch tolerance for run resynthesis.
constexpr double kSynthTol = 1e-12;

// Accumulates the output circuit. Maximal runs of single-qubit gates on a
// qubit are held as a pending 2x2 unitary; a barrier (ECR, an explicit I, or
// the end of the circuit) flushes the run as a minimal basis sequence:
// nothing, RZ, [RZ] X [RZ], [RZ] SX [RZ], or RZ SX RZ SX RZ. Runs made only
// of RZ gates keep exact summed angles instead of round-tripping through the
// matrix. Identity gates are deliberate noise placeholders and pass through
// untouched.
class Emitter {
 public:
  explicit Emitter(int n_qubits)
      : out_{n_qubits, {}, {}}, runs_(static_cast<size_t>(n_qubits)) {}

  void rz(int qubit, double theta, int src) {
    Run& r = start(qubit);
    r.angle += theta;
    r.u = mat_rz(theta) * r.u;
    r.src = src;
  }

  void gate(Gate g, int src) {
    if (g.arity() == 1 && g.kind != GateKind::kI) {
      Run& r = start(g.qubits[0]);
      r.u = g.matrix() * r.u;
      r.rz_only = false;
      r.src = src;
      return;
    }
    for (int q : g.qubits) flush(q);
    out_.push(std::move(g), src);
  }

  BasisCircuit finish() {
    for (int q = 0; q < out_.n_qubits; ++q) flush(q);
    return std::move(out_);
  }

 private:
  struct Run {
    bool active = false;
    bool rz_only = true;
    double angle = 0;
    Eigen::Matrix2cd u;
    int src = -1;
  };

  Run& start(int qubit) {
    Run& r = runs_[static_cast<size_t>(qubit)];
    if (!r.active) {
      r.active = true;
      r.rz_only = true;
      r.angle = 0;
      r.u = Eigen::Matrix2cd::Identity();
    }
    return r;
  }

  void emit_rz(int qubit, double theta, int src) {
    double a = std::remainder(theta, 2.0 * kPi);
    if (std::abs(a) > kAngleTol) out_.push(Gate::rz(a, qubit), src);
  }

  // ZXZXZ synthesis of the run unitary up to a global phase, shortened when
  // the rotation axis allows it.
  void synthesize(int qubit, const Eigen::Matrix2cd& u, int src) {
    const double s = std::abs(u(1, 0));
    const double c = std::abs(u(0, 0));
    if (s <= kSynthTol) {  // diagonal
      emit_rz(qubit, std::arg(u(1, 1)) - std::arg(u(0, 0)), src);
      return;
    }
    if (c <= kSynthTol) {  // anti-diagonal
      double phi = std::arg(u(1, 0)) - std::arg(-u(0, 1));
      out_.push(Gate::x(qubit), src);
      emit_rz(qubit, phi - kPi, src);
      return;
    }
    // u ~ RZ(alpha) RY(theta) RZ(beta), with
    // RY(theta) ~ RZ(pi) SX RZ(theta + pi) SX.
    const double theta = 2.0 * std::atan2(s, c);
    const double alpha = std::arg(u(1, 0)) - std::arg(u(0, 0));
    const double beta = std::arg(-u(0, 1)) - std::arg(u(0, 0));
    if (std::abs(theta - kPi / 2) <= kSynthTol) {  // one SX suffices
      emit_rz(qubit, beta - kPi / 2, src);
      out_.push(Gate::sx(qubit), src);
      emit_rz(qubit, alpha + kPi / 2, src);
      return;
    }
    emit_rz(qubit, beta, src);
    out_.push(Gate::sx(qubit), src);
    emit_rz(qubit, theta + kPi, src);
    out_.push(Gate::sx(qubit), src);
    emit_rz(qubit, alpha + kPi, src);
  }

  void flush(int qubit) {
    Run& r = runs_[static_cast<size_t>(qubit)];
    if (!r.active) return;
    r.active = false;
    if (r.rz_only)
      emit_rz(qubit, r.angle, r.src);
    else
      synthesize(qubit, r.u, r.src);
  }

  BasisCircuit out_;
  std::vector<Run> runs_;
};

void lower_h(int q, int src, Emitter& em) {
  em.rz(q, kPi / 2, src);
  em.gate(Gate::sx(q), src);
  em.rz(q, kPi / 2, src);
}

void lower_ry(double theta, int q, int src, Emitter& em) {
  em.gate(Gate::sx(q), src);
  em.rz(q, theta + kPi, src);
  em.gate(Gate::sx(q), src);
  em.rz(q, kPi, src);
}

void lower_cx(int c, int t, int src, Emitter& em) {
  em.gate(Gate::sx(c), src);
  em.rz(c, kPi / 2, src);
  em.rz(t, kPi / 2, src);
  em.gate(Gate::sx(t), src);
  em.gate(Gate::ecr(c, t), src);
  em.rz(c, kPi / 2, src);
  em.gate(Gate::sx(c), src);
  em.rz(c, kPi / 2, src);
  em.rz(t, kPi / 2, src);
  em.gate(Gate::sx(t), src);
  em.rz(t, -kPi / 2, src);
}

void lower_ccx(int c1, int c2, int t, int src, Emitter& em) {
  lower_h(t, src, em);
  lower_cx(c2, t, src, em);
  em.rz(t, -kPi / 4, src);
  lower_cx(c1, t, src, em);
  em.rz(t, kPi / 4, src);
  lower_cx(c2, t, src, em);
  em.rz(t, -kPi / 4, src);
  lower_cx(c1, t, src, em);
  em.rz(c2, kPi / 4, src);
  em.rz(t, kPi / 4, src);
  lower_h(t, src, em);
  lower_cx(c1, c2, src, em);
  em.rz(c1, kPi / 4, src);
  em.rz(c2, -kPi / 4, src);
  lower_cx(c1, c2, src, em);
}

void lower_multiplexed_ry(const std::vector<int>& controls, int target,
                          const std::vector<double>& angles, int src,
                          Emitter& em) {
  bool all_zero = true;
  for (double a : angles)
    if (a != 0.0) {
      all_zero = false;
      break;
    }
  if (all_zero) return;
  if (controls.empty()) {
    lower_ry(angles[0], target, src, em);
    return;
  }
  size_t half = angles.size() / 2;
  std::vector<double> sum(half), diff(half);
  for (size_t v = 0; v < half; ++v) {
    sum[v] = (angles[v] + angles[half + v]) / 2;
    diff[v] = (angles[v] - angles[half + v]) / 2;
  }
  std::vector<int> rest(controls.begin() + 1, controls.end());
  lower_multiplexed_ry(rest, target, sum, src, em);
  lower_cx(controls[0], target, src, em);
  lower_multiplexed_ry(rest, target, diff, src, em);
  lower_cx(controls[0], target, src, em);
}

void lower(const Gate& g, int src, Emitter& em) {
  switch (g.kind) {
    case GateKind::kI:
    case GateKind::kX:
    case GateKind::kSx:
    case GateKind::kSxdg:
    case GateKind::kEcr:
      em.gate(g, src);
      break;
    case GateKind::kRz:
      em.rz(g.qubits[0], g.angles[0], src);
      break;
    case GateKind::kH:
      lower_h(g.qubits[0], src, em);
      break;
    case GateKind::kRy:
      lower_ry(g.angles[0], g.qubits[0], src, em);
      break;
    case GateKind::kCx:
      lower_cx(g.qubits[0], g.qubits[1], src, em);
      break;
    case GateKind::kCcx:
      lower_ccx(g.qubits[0], g.qubits[1], g.qubits[2], src, em);
      break;
    case GateKind::kCswap: {
      int c = g.qubits[0], a = g.qubits[1], b = g.qubits[2];
      lower_cx(b, a, src, em);
      lower_ccx(c, a, b, src, em);
      lower_cx(b, a, src, em);
      break;
    }
    case GateKind::kStatePrep: {
      std::vector<int> controls(g.qubits.begin(), g.qubits.end() - 1);
      lower_multiplexed_ry(controls, g.qubits.back(), g.angles, src, em);
      break;
    }
  }
}

}  // namespace

BasisCircuit decompose(const Circuit& circuit) {
  Emitter em(circuit.n_qubits);
  for (size_t i = 0; i < circuit.gates.size(); ++i)
    lower(circuit.gates[i], static_cast<int>(i), em);
  return em.finish();
}

Gate basis_inverse(const Gate& g) {
  switch (g.kind) {
    case GateKind::kI:
    case GateKind::kX:
    case GateKind::kEcr:
      return g;
    case GateKind::kSx:
      return Gate::sxdg(g.qubits[0]);
    case GateKind::kSxdg:
      return Gate::sx(g.qubits[0]);
    case GateKind::kRz:
      return Gate::rz(-g.angles[0], g.qubits[0]);
    default:
      throw SimError("basis_inverse: non-basis gate");
  }
}

BasisCircuit fold(const BasisCircuit& circuit, int i) {
  if (i < 0) throw SimError("fold count must be non-negative");
  BasisCircuit out;
  out.n_qubits = circuit.n_qubits;
  out.gates.reserve(circuit.gates.size() * (1 + 2 * static_cast<size_t>(i)));
  for (size_t j = 0; j < circuit.gates.size(); ++j) {
    const Gate& g = circuit.gates[j];
    int src = circuit.provenance[j];
    out.push(g, src);
    for (int r = 0; r < i; ++r) {
      out.push(basis_inverse(g), src);
      out.push(g, src);
    }
  }
  return out;
}

GateCensus gate_census(const BasisCircuit& circuit) {
  GateCensus c;
  for (const Gate& g : circuit.gates) {
    switch (g.kind) {
      case GateKind::kI:
      case GateKind::kX:
      case GateKind::kSx:
      case GateKind::kSxdg:
        ++c.m_s;
        break;
      case GateKind::kEcr:
        ++c.m_t;
        break;
      default:
        break;
    }
  }
  c.m_d = c.m_s + 2 * c.m_t;
  return c;
}

int circuit_depth(const BasisCircuit& circuit) {
  std::vector<int> level(static_cast<size_t>(circuit.n_qubits), 0);
  int depth = 0;
  for (const Gate& g : circuit.gates) {
    int next = 0;
    for (int q : g.qubits) next = std::max(next, level[static_cast<size_t>(q)]);
    ++next;
    for (int q : g.qubits) level[static_cast<size_t>(q)] = next;
    depth = std::max(depth, next);
  }
  return depth;
}

std::string dump_circuit(const BasisCircuit& circuit) {
  std::string out;
  char buf[64];
  for (const Gate& g : circuit.gates) {
    out += gate_kind_name(g.kind);
    for (int q : g.qubits) {
      std::snprintf(buf, sizeof(buf), " %d", q);
      out += buf;
    }
    for (double a : g.angles) {
      std::snprintf(buf, sizeof(buf), " %.17g", a);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace qmitdd
