// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#include "qmitdd/density_matrix.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdint>

#include "qmitdd/errors.hpp"

namespace qmitdd {
namespace {

// Scatter/gather index tables for one gate placement: offsets enumerates the
// 2^k gate-local index embeddings, bases enumerates all full-register indices
// with zero bits at every target position.
struct TargetLayout {
  int k = 0;
  std::uint32_t dk = 0;
  std::vector<std::uint32_t> offsets;
  std::vector<std::uint32_t> bases;
};

TargetLayout build_layout(int n, const std::vector<int>& qubits) {
  TargetLayout lay;
  lay.k = static_cast<int>(qubits.size());
  lay.dk = 1u << lay.k;
  std::uint32_t mask = 0;
  std::vector<std::uint32_t> pos(qubits.size());
  for (std::size_t j = 0; j < qubits.size(); ++j) {
    if (qubits[j] < 0 || qubits[j] >= n)
      throw SimError("target qubit outside register");
    pos[j] = 1u << (n - 1 - qubits[j]);
    if (mask & pos[j]) throw SimError("repeated target qubit");
    mask |= pos[j];
  }
  lay.offsets.resize(lay.dk);
  for (std::uint32_t g = 0; g < lay.dk; ++g) {
    std::uint32_t off = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j)
      if ((g >> (qubits.size() - 1 - j)) & 1u) off |= pos[j];
    lay.offsets[g] = off;
  }
  std::vector<std::uint32_t> free_pos;
  for (int b = n - 1; b >= 0; --b) {
    const std::uint32_t p = 1u << b;
    if (!(mask & p)) free_pos.push_back(p);
  }
  const std::uint32_t n_bases = 1u << free_pos.size();
  lay.bases.resize(n_bases);
  for (std::uint32_t r = 0; r < n_bases; ++r) {
    std::uint32_t base = 0;
    for (std::size_t b = 0; b < free_pos.size(); ++b)
      if ((r >> b) & 1u) base |= free_pos[b];
    lay.bases[r] = base;
  }
  return lay;
}

// rho <- M_emb * rho
void apply_left(CMatrix& rho, const CMatrix& m, const TargetLayout& lay) {
  const Eigen::Index n_cols = rho.cols();
  const std::uint32_t dk = lay.dk;
  std::vector<std::complex<double>> in(dk);
  for (Eigen::Index col = 0; col < n_cols; ++col) {
    for (std::uint32_t base : lay.bases) {
      for (std::uint32_t g = 0; g < dk; ++g)
        in[g] = rho.coeff(base + lay.offsets[g], col);
      for (std::uint32_t g = 0; g < dk; ++g) {
        std::complex<double> acc = 0;
        for (std::uint32_t h = 0; h < dk; ++h) acc += m.coeff(g, h) * in[h];
        rho.coeffRef(base + lay.offsets[g], col) = acc;
      }
    }
  }
}

// rho <- rho * M_emb^H
void apply_right_adjoint(CMatrix& rho, const CMatrix& m,
                         const TargetLayout& lay) {
  const Eigen::Index n_rows = rho.rows();
  const std::uint32_t dk = lay.dk;
  std::vector<std::complex<double>> in(dk);
  for (std::uint32_t base : lay.bases) {
    for (Eigen::Index row = 0; row < n_rows; ++row) {
      for (std::uint32_t g = 0; g < dk; ++g)
        in[g] = rho.coeff(row, base + lay.offsets[g]);
      for (std::uint32_t g = 0; g < dk; ++g) {
        std::complex<double> acc = 0;
        for (std::uint32_t h = 0; h < dk; ++h)
          acc += in[h] * std::conj(m.coeff(g, h));
        rho.coeffRef(row, base + lay.offsets[g]) = acc;
      }
    }
  }
}

}  // namespace

DensityMatrix::DensityMatrix(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    throw SimError("qubit count outside simulator capacity");
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  rho_ = CMatrix::Zero(d, d);
  rho_(0, 0) = 1.0;
}

DensityMatrix DensityMatrix::from_statevector(const CVector& v) {
  int n = 0;
  while ((Eigen::Index{1} << n) < v.size()) ++n;
  if ((Eigen::Index{1} << n) != v.size())
    throw SimError("statevector length must be a power of two");
  DensityMatrix dm(n);
  dm.rho_ = v * v.adjoint();
  return dm;
}

DensityMatrix DensityMatrix::from_matrix(int n_qubits, CMatrix rho) {
  DensityMatrix dm(n_qubits);
  if (rho.rows() != dm.dim() || rho.cols() != dm.dim())
    throw SimError("density matrix dimension mismatch");
  dm.rho_ = std::move(rho);
  dm.check_valid();
  return dm;
}

double DensityMatrix::trace_error() const {
  return std::abs(rho_.trace() - std::complex<double>(1.0, 0.0));
}

double DensityMatrix::hermiticity_error() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  const CMatrix herm = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm,
                                            Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void DensityMatrix::check_valid() const {
  if (trace_error() > 1e-12) throw SimError("density matrix trace drifted from 1");
  if (hermiticity_error() > 1e-12) throw SimError("density matrix is not Hermitian");
  if (min_eigenvalue() < -1e-10)
    throw SimError("density matrix has a negative eigenvalue");
}

double DensityMatrix::prob_first_qubit_zero() const {
  const Eigen::Index half = dim() / 2;
  double p = 0.0;
  for (Eigen::Index i = 0; i < half; ++i) {
    double v = rho_.coeff(i, i).real();
    if (v < 0.0) {
      if (v < -1e-10) throw SimError("diagonal entry negative beyond tolerance");
      v = 0.0;
    }
    p += v;
  }
  if (p < 0.0) p = 0.0;
  if (p > 1.0) p = 1.0;
  return p;
}

void DensityMatrix::apply_unitary(const CMatrix& u,
                                  const std::vector<int>& qubits) {
  const TargetLayout lay = build_layout(n_, qubits);
  if (u.rows() != lay.dk || u.cols() != lay.dk)
    throw SimError("unitary dimension does not match target count");
  apply_left(rho_, u, lay);
  apply_right_adjoint(rho_, u, lay);
}

void DensityMatrix::apply_unitary(const Gate& g) {
  apply_unitary(g.matrix(), g.qubits);
}

void DensityMatrix::apply_channel(const KrausChannel& ch,
                                  const std::vector<int>& qubits) {
  const TargetLayout lay = build_layout(n_, qubits);
  if (ch.dim() != lay.dk)
    throw SimError("channel dimension does not match target count");
  CMatrix acc = CMatrix::Zero(rho_.rows(), rho_.cols());
  for (const auto& k : ch.ops()) {
    CMatrix term = rho_;
    apply_left(term, k, lay);
    apply_right_adjoint(term, k, lay);
    acc += term;
  }
  rho_ = std::move(acc);
}

void DensityMatrix::apply_superop(const CMatrix& s,
                                  const std::vector<int>& qubits) {
  const TargetLayout lay = build_layout(n_, qubits);
  const std::uint32_t dk = lay.dk;
  const std::uint32_t dk2 = dk * dk;
  if (s.rows() != dk2 || s.cols() != dk2)
    throw SimError("superoperator dimension does not match target count");
  std::vector<std::complex<double>> in(dk2), out(dk2);
  for (std::uint32_t base_r : lay.bases) {
    for (std::uint32_t base_c : lay.bases) {
      for (std::uint32_t g = 0; g < dk; ++g)
        for (std::uint32_t h = 0; h < dk; ++h)
          in[g * dk + h] =
              rho_.coeff(base_r + lay.offsets[g], base_c + lay.offsets[h]);
      for (std::uint32_t a = 0; a < dk2; ++a) {
        std::complex<double> acc = 0;
        for (std::uint32_t b = 0; b < dk2; ++b) acc += s.coeff(a, b) * in[b];
        out[a] = acc;
      }
      for (std::uint32_t g = 0; g < dk; ++g)
        for (std::uint32_t h = 0; h < dk; ++h)
          rho_.coeffRef(base_r + lay.offsets[g], base_c + lay.offsets[h]) =
              out[g * dk + h];
    }
  }
}

}  // namespace qmitdd
