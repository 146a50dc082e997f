// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#include "qmitdd/kraus.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "qmitdd/errors.hpp"

namespace qmitdd {

KrausChannel::KrausChannel(std::vector<CMatrix> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw SimError("empty Kraus set");
  const Eigen::Index d = ops_.front().rows();
  if (d != 2 && d != 4) throw SimError("Kraus channel must act on 1 or 2 qubits");
  arity_ = d == 2 ? 1 : 2;
  for (const auto& k : ops_)
    if (k.rows() != d || k.cols() != d)
      throw SimError("inconsistent Kraus operator dimensions");
  if (completeness_error() > 1e-10)
    throw SimError("Kraus channel is not trace preserving");
}

KrausChannel KrausChannel::identity(int arity) {
  const Eigen::Index d = arity == 1 ? 2 : 4;
  return KrausChannel({CMatrix::Identity(d, d)});
}

double KrausChannel::completeness_error() const {
  const Eigen::Index d = dim();
  CMatrix acc = CMatrix::Zero(d, d);
  for (const auto& k : ops_) acc += k.adjoint() * k;
  acc -= CMatrix::Identity(d, d);
  return acc.cwiseAbs().maxCoeff();
}

CMatrix KrausChannel::choi() const {
  const Eigen::Index d = dim();
  CMatrix lambda = CMatrix::Zero(d * d, d * d);
  for (const auto& k : ops_) {
    // vec(K)[i*d + r] = K(r, i)
    CVector v(d * d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index r = 0; r < d; ++r) v(i * d + r) = k(r, i);
    lambda += v * v.adjoint();
  }
  return lambda;
}

KrausChannel KrausChannel::from_choi(const CMatrix& lambda, double eig_tol) {
  const Eigen::Index dd = lambda.rows();
  const Eigen::Index d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(dd))));
  if (d * d != dd || lambda.cols() != dd) throw SimError("Choi matrix must be d^2 x d^2");
  if ((lambda - lambda.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw SimError("Choi matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(lambda);
  std::vector<CMatrix> ops;
  for (Eigen::Index a = 0; a < dd; ++a) {
    const double w = es.eigenvalues()(a);
    if (w < -1e-10) throw SimError("Choi matrix is not positive semidefinite");
    if (w <= eig_tol) continue;
    const double s = std::sqrt(w);
    CMatrix k(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index r = 0; r < d; ++r) k(r, i) = s * es.eigenvectors()(i * d + r, a);
    ops.push_back(std::move(k));
  }
  return KrausChannel(std::move(ops));
}

CMatrix KrausChannel::superop() const {
  const Eigen::Index d = dim();
  CMatrix s = CMatrix::Zero(d * d, d * d);
  for (const auto& k : ops_) {
    const CMatrix kc = k.conjugate();
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < d; ++c)
        for (Eigen::Index rp = 0; rp < d; ++rp)
          for (Eigen::Index cp = 0; cp < d; ++cp)
            s(r * d + c, rp * d + cp) += k(r, rp) * kc(c, cp);
  }
  return s;
}

CMatrix superop_from_unitary(const CMatrix& u) {
  const Eigen::Index d = u.rows();
  const CMatrix uc = u.conjugate();
  CMatrix s(d * d, d * d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c)
      for (Eigen::Index rp = 0; rp < d; ++rp)
        for (Eigen::Index cp = 0; cp < d; ++cp)
          s(r * d + c, rp * d + cp) = u(r, rp) * uc(c, cp);
  return s;
}

}  // namespace qmitdd
