// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#include "qmitdd/noise_model.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "qmitdd/errors.hpp"

namespace qmitdd {

void DeviceCalibration::validate() const {
  if (!(t1 > 0)) throw ConfigError("T1 must be positive");
  if (!(t2 > 0) || !(t2 < 2 * t1))
    throw ConfigError("T2 must satisfy 0 < T2 < 2*T1");
  if (tg_1q < 0 || tg_2q < 0) throw ConfigError("gate times must be >= 0");
  if (eps_g_1q < 0 || eps_g_1q >= 1 || eps_g_2q < 0 || eps_g_2q >= 1)
    throw ConfigError("gate error rates must lie in [0, 1)");
  if (q_e < 0 || q_e >= 1) throw ConfigError("q_e must lie in [0, 1)");
}

DeviceCalibration load_calibration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open calibration file: " + path);
  std::map<std::string, double> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    const auto eq = key.find('=');
    std::string value_str;
    if (eq != std::string::npos) {
      value_str = key.substr(eq + 1);
      key = key.substr(0, eq);
      if (value_str.empty()) ls >> value_str;
    } else {
      std::string eq_tok;
      ls >> eq_tok;
      if (eq_tok == "=") {
        ls >> value_str;
      } else if (!eq_tok.empty() && eq_tok[0] == '=') {
        value_str = eq_tok.substr(1);
      }
    }
    if (value_str.empty())
      throw ConfigError("calibration line " + std::to_string(lineno) +
                        ": expected key=value");
    std::size_t used = 0;
    double value;
    try {
      value = std::stod(value_str, &used);
    } catch (const std::exception&) {
      throw ConfigError("calibration key " + key + ": bad number '" +
                        value_str + "'");
    }
    if (used != value_str.size())
      throw ConfigError("calibration key " + key + ": bad number '" +
                        value_str + "'");
    if (!kv.emplace(key, value).second)
      throw ConfigError("calibration key repeated: " + key);
  }
  DeviceCalibration cal;
  const std::map<std::string, double*> fields = {
      {"T1", &cal.t1},           {"T2", &cal.t2},
      {"Tg_1q", &cal.tg_1q},     {"Tg_2q", &cal.tg_2q},
      {"eps_g_1q", &cal.eps_g_1q}, {"eps_g_2q", &cal.eps_g_2q},
      {"q_e", &cal.q_e}};
  for (const auto& [key, value] : kv) {
    const auto it = fields.find(key);
    if (it == fields.end()) throw ConfigError("unknown calibration key: " + key);
    *it->second = value;
  }
  for (const auto& [name, ptr] : fields)
    if (name != "q_e" && kv.find(name) == kv.end())
      throw ConfigError("missing calibration key: " + name);
  cal.validate();
  return cal;
}

RelaxDephase relax_dephase_probs(double t1, double t2, double tg) {
  if (!(t1 > 0) || !(t2 > 0)) throw ConfigError("T1 and T2 must be positive");
  if (tg < 0) throw ConfigError("gate time must be >= 0");
  return {std::exp(-tg / t1), std::exp(-tg / t2)};
}

ThermalMixture thermal_mixture_weights(double eps_t1, double eps_t2,
                                       double q_e) {
  ThermalMixture w{};
  w.q_r0 = (1.0 - q_e) * (1.0 - eps_t1);
  w.q_r1 = q_e * (1.0 - eps_t1);
  w.q_z = eps_t1 * (1.0 - eps_t2 / eps_t1) / 2.0;
  w.q_id = 1.0 - w.q_z - w.q_r0 - w.q_r1;
  return w;
}

CMatrix thermal_relaxation_choi(double t1, double t2, double tg, double q_e) {
  const auto [eps_t1, eps_t2] = relax_dephase_probs(t1, t2, tg);
  const double p_r = 1.0 - eps_t1;
  const double p_e = q_e;
  CMatrix lambda = CMatrix::Zero(4, 4);
  lambda(0, 0) = 1.0 - p_e * p_r;
  lambda(1, 1) = p_e * p_r;
  lambda(2, 2) = (1.0 - p_e) * p_r;
  lambda(3, 3) = 1.0 - (1.0 - p_e) * p_r;
  lambda(0, 3) = eps_t2;
  lambda(3, 0) = eps_t2;
  return lambda;
}

KrausChannel thermal_relaxation_channel(double t1, double t2, double tg,
                                        double q_e) {
  if (!(t2 < 2 * t1))
    throw ConfigError("thermal relaxation requires T2 < 2*T1");
  if (t2 <= t1) {
    const auto [eps_t1, eps_t2] = relax_dephase_probs(t1, t2, tg);
    const ThermalMixture w = thermal_mixture_weights(eps_t1, eps_t2, q_e);
    std::vector<CMatrix> ops;
    auto add = [&ops](double weight, const CMatrix& m) {
      if (weight > 0) ops.push_back(std::sqrt(weight) * m);
    };
    add(w.q_id, mat_i());
    add(w.q_z, mat_z());
    // Reset to |0>: trace-preserving channel {|0><0|, |0><1|} (and the |1>
    // analogue); the bare projector form is not trace preserving.
    CMatrix k00 = CMatrix::Zero(2, 2), k01 = CMatrix::Zero(2, 2);
    k00(0, 0) = 1;
    k01(0, 1) = 1;
    add(w.q_r0, k00);
    add(w.q_r0, k01);
    CMatrix k10 = CMatrix::Zero(2, 2), k11 = CMatrix::Zero(2, 2);
    k11(1, 1) = 1;
    k10(1, 0) = 1;
    add(w.q_r1, k11);
    add(w.q_r1, k10);
    return KrausChannel(std::move(ops));
  }
  return KrausChannel::from_choi(thermal_relaxation_choi(t1, t2, tg, q_e),
                                 1e-10);
}

namespace {
double clamp_depolarizing(double q, const char* name) {
  if (q < -1e-6 || q > 1.0 + 1e-6)
    throw ConfigError(std::string(name) +
                      " is inconsistent with the relaxation parameters");
  if (q < 0) return 0;
  if (q > 1) return 1;
  return q;
}
}  // namespace

double depolarizing_q1(double eps_g, double eps_t1, double eps_t2) {
  const double d1 = eps_t1 + 2.0 * eps_t2;
  if (!(d1 > 0)) throw ConfigError("d1 must be positive");
  return clamp_depolarizing(1.0 + 3.0 * (2.0 * eps_g - 1.0) / d1, "q1");
}

double depolarizing_q2(double eps_g, double eps_t1, double eps_t2) {
  const double d2 = 2.0 * eps_t1 + eps_t1 * eps_t1 + 4.0 * eps_t2 +
                    4.0 * eps_t2 * eps_t2 + 4.0 * eps_t1 * eps_t2;
  if (!(d2 > 0)) throw ConfigError("d2 must be positive");
  return clamp_depolarizing(1.0 + 5.0 * (4.0 * eps_g - 3.0) / d2, "q2");
}

KrausChannel depolarizing_channel_1q(double q1) {
  std::vector<CMatrix> ops;
  ops.push_back(std::sqrt(1.0 - 0.75 * q1) * mat_i());
  if (q1 > 0) {
    const double s = std::sqrt(q1 / 4.0);
    ops.push_back(s * mat_x());
    ops.push_back(s * mat_y());
    ops.push_back(s * mat_z());
  }
  return KrausChannel(std::move(ops));
}

KrausChannel depolarizing_channel_2q(double q2) {
  std::vector<CMatrix> ops;
  const CMatrix* paulis[4] = {&mat_i(), &mat_x(), &mat_y(), &mat_z()};
  ops.push_back(std::sqrt(1.0 - 15.0 * q2 / 16.0) *
                CMatrix(CMatrix::Identity(4, 4)));
  if (q2 > 0) {
    const double s = std::sqrt(q2 / 16.0);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (i == 0 && j == 0) continue;
        CMatrix e(4, 4);
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 2; ++c)
            e.block(2 * r, 2 * c, 2, 2) = (*paulis[i])(r, c) * (*paulis[j]);
        ops.push_back(s * e);
      }
  }
  return KrausChannel(std::move(ops));
}

GateClass basis_gate_class(GateKind kind) {
  switch (kind) {
    case GateKind::kI:
    case GateKind::kX:
    case GateKind::kSx:
    case GateKind::kSxdg:
      return GateClass::kOneQubitNoisy;
    case GateKind::kEcr:
      return GateClass::kTwoQubitNoisy;
    case GateKind::kRz:
      return GateClass::kNoiseless;
    default:
      throw SimError("gate class is defined for basis gates only");
  }
}

NoiseModel NoiseModel::from_calibration(const DeviceCalibration& cal) {
  cal.validate();
  NoiseModel nm;
  const auto [e1_t1, e1_t2] = relax_dephase_probs(cal.t1, cal.t2, cal.tg_1q);
  const auto [e2_t1, e2_t2] = relax_dephase_probs(cal.t1, cal.t2, cal.tg_2q);
  nm.oneq_chain_.push_back(
      depolarizing_channel_1q(depolarizing_q1(cal.eps_g_1q, e1_t1, e1_t2)));
  nm.oneq_chain_.push_back(
      thermal_relaxation_channel(cal.t1, cal.t2, cal.tg_1q, cal.q_e));
  nm.twoq_pair_chain_.push_back(
      depolarizing_channel_2q(depolarizing_q2(cal.eps_g_2q, e2_t1, e2_t2)));
  nm.twoq_each_chain_.push_back(
      thermal_relaxation_channel(cal.t1, cal.t2, cal.tg_2q, cal.q_e));
  return nm;
}

NoiseModel NoiseModel::depolarizing_only(double q1, double q2) {
  NoiseModel nm;
  if (q1 > 0) nm.oneq_chain_.push_back(depolarizing_channel_1q(q1));
  if (q2 > 0) nm.twoq_pair_chain_.push_back(depolarizing_channel_2q(q2));
  return nm;
}

}  // namespace qmitdd
