// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QMITDD_NOISE_MODEL_HPP_
#define QMITDD_NOISE_MODEL_HPP_

#include <string>
#include <vector>

#include "qmitdd/gate.hpp"
#include "qmitdd/kraus.hpp"

namespace qmitdd {

// Device calibration in microseconds / probabilities.
struct DeviceCalibration {
  double t1 = 0;         // relaxation time, us
  double t2 = 0;         // dephasing time, us
  double tg_1q = 0;      // 1-qubit gate time, us
  double tg_2q = 0;      // 2-qubit gate time, us
  double eps_g_1q = 0;   // 1-qubit gate error rate
  double eps_g_2q = 0;   // 2-qubit gate error rate
  double q_e = 0;        // excited-state population

  void validate() const;  // throws ConfigError
};

// Plain-text key=value file with exactly the DeviceCalibration fields
// (T1, T2, Tg_1q, Tg_2q, eps_g_1q, eps_g_2q, optional q_e); unknown keys
// are rejected.
DeviceCalibration load_calibration(const std::string& path);

// eps_T1 = exp(-Tg/T1), eps_T2 = exp(-Tg/T2).
struct RelaxDephase {
  double eps_t1;
  double eps_t2;
};
RelaxDephase relax_dephase_probs(double t1, double t2, double tg);

// Mixture weights of the T2 <= T1 thermal-relaxation branch.
struct ThermalMixture {
  double q_id, q_z, q_r0, q_r1;
};
ThermalMixture thermal_mixture_weights(double eps_t1, double eps_t2,
                                       double q_e);

// Thermal relaxation channel. T2 <= T1 uses the I/Z/reset mixture; the
// T1 < T2 < 2*T1 regime uses the Choi-matrix construction converted to a
// Kraus set. T2 >= 2*T1 is rejected.
KrausChannel thermal_relaxation_channel(double t1, double t2, double tg,
                                        double q_e);

// Choi matrix of the T1 < T2 < 2*T1 branch (exposed for oracle tests).
CMatrix thermal_relaxation_choi(double t1, double t2, double tg, double q_e);

// Depolarizing probabilities from gate and relaxation error rates; clamped
// to [0,1], values outside by more than 1e-6 are a calibration error.
double depolarizing_q1(double eps_g, double eps_t1, double eps_t2);
double depolarizing_q2(double eps_g, double eps_t1, double eps_t2);

KrausChannel depolarizing_channel_1q(double q1);
KrausChannel depolarizing_channel_2q(double q2);

enum class GateClass { kOneQubitNoisy, kTwoQubitNoisy, kNoiseless };

// Class of a basis gate: I/X/SX/SXDG are noisy 1q, ECR noisy 2q, RZ virtual.
GateClass basis_gate_class(GateKind kind);

// Channels attached per gate class, applied after the gate in list order.
class NoiseModel {
 public:
  static NoiseModel from_calibration(const DeviceCalibration& cal);
  // Pure depolarizing model (no thermal relaxation); q = 0 omits a channel.
  static NoiseModel depolarizing_only(double q1, double q2);

  // Applied on the gate qubit after every noisy 1q gate.
  const std::vector<KrausChannel>& one_qubit_chain() const {
    return oneq_chain_;
  }
  // Applied on the qubit pair after ECR.
  const std::vector<KrausChannel>& two_qubit_pair_chain() const {
    return twoq_pair_chain_;
  }
  // Applied afterwards on each qubit of the pair individually.
  const std::vector<KrausChannel>& two_qubit_each_chain() const {
    return twoq_each_chain_;
  }

 private:
  std::vector<KrausChannel> oneq_chain_;
  std::vector<KrausChannel> twoq_pair_chain_;
  std::vector<KrausChannel> twoq_each_chain_;
};

}  // namespace qmitdd

#endif  // QMITDD_NOISE_MODEL_HPP_
