// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#include "qmitdd/material.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qmitdd/errors.hpp"

namespace qmitdd {

void RambergOsgoodParams::validate() const {
  if (!(e_mod > 0)) throw ConfigError("Ramberg-Osgood: E must be positive");
  if (!(sigma0 > 0))
    throw ConfigError("Ramberg-Osgood: sigma0 must be positive");
  if (!(beta >= 1)) throw ConfigError("Ramberg-Osgood: beta must be >= 1");
  if (!(alpha >= 0)) throw ConfigError("Ramberg-Osgood: alpha must be >= 0");
}

double ramberg_osgood_strain(const RambergOsgoodParams& p, double sigma) {
  return sigma / p.e_mod *
         (1.0 + p.alpha * std::pow(std::abs(sigma) / p.sigma0, p.beta - 1.0));
}

double ramberg_osgood_stress(const RambergOsgoodParams& p, double eps) {
  if (eps == 0.0) return 0.0;
  // Odd monotone increasing in sigma; solve on the side matching eps.
  double sign = eps > 0 ? 1.0 : -1.0;
  double target = std::abs(eps);
  // Bracket: strain(sigma) >= sigma/E, so sigma <= E*target always works as
  // an upper bound; expand is unnecessary.
  double lo = 0.0, hi = p.e_mod * target;
  double sigma = hi;
  for (int it = 0; it < 200; ++it) {
    double f = ramberg_osgood_strain(p, sigma) - target;
    if (f > 0)
      hi = sigma;
    else
      lo = sigma;
    double slope =
        (1.0 + p.alpha * p.beta *
                   std::pow(sigma / p.sigma0, p.beta - 1.0)) /
        p.e_mod;
    double next = sigma - f / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - sigma) <= 1e-12 * std::max(1.0, std::abs(sigma))) {
      sigma = next;
      break;
    }
    sigma = next;
  }
  return sign * sigma;
}

MaterialDatabase::MaterialDatabase(std::vector<MaterialPoint> points,
                                   Eigen::MatrixXd c)
    : points_(std::move(points)), c_(std::move(c)) {
  if (points_.empty()) throw ConfigError("material database is empty");
  if (c_.rows() != c_.cols() || c_.rows() < 1)
    throw ConfigError("scaling matrix must be square");
  if (!c_.isApprox(c_.transpose(), 1e-12))
    throw ConfigError("scaling matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c_);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0)
    throw ConfigError("scaling matrix must be positive definite");
  Eigen::VectorXd sq = es.eigenvalues().cwiseSqrt();
  c_sqrt_ = es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().transpose();
  c_inv_sqrt_ = es.eigenvectors() * sq.cwiseInverse().asDiagonal() *
                es.eigenvectors().transpose();
  int m = block_dim();
  scaled_.reserve(points_.size());
  for (const MaterialPoint& z : points_) {
    if (z.strain.size() != m || z.stress.size() != m)
      throw ConfigError("material point block dimension mismatch");
    if (!z.strain.allFinite() || !z.stress.allFinite())
      throw ConfigError("material point has non-finite entries");
    scaled_.push_back(scale_point(z));
  }
}

Vector MaterialDatabase::scale_point(const MaterialPoint& z) const {
  int m = block_dim();
  Vector v(2 * m);
  v.head(m) = c_sqrt_ * z.strain;
  v.tail(m) = c_inv_sqrt_ * z.stress;
  return v;
}

MaterialPoint MaterialDatabase::unscale_point(const Vector& v) const {
  int m = block_dim();
  if (v.size() != 2 * m) throw SimError("scaled vector dimension mismatch");
  MaterialPoint z;
  z.strain = c_inv_sqrt_ * v.head(m);
  z.stress = c_sqrt_ * v.tail(m);
  return z;
}

MaterialDatabase generate_db(const RambergOsgoodParams& p, double sigma_min,
                             double sigma_max, int n, double c) {
  p.validate();
  if (n < 2) throw ConfigError("database size must be >= 2");
  if (!(sigma_min < sigma_max))
    throw ConfigError("database stress range is empty");
  std::vector<MaterialPoint> points;
  points.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    double sigma = sigma_min + (sigma_max - sigma_min) * i / (n - 1);
    MaterialPoint z;
    z.strain = Eigen::VectorXd::Constant(1, ramberg_osgood_strain(p, sigma));
    z.stress = Eigen::VectorXd::Constant(1, sigma);
    points.push_back(std::move(z));
  }
  return MaterialDatabase(std::move(points),
                          Eigen::MatrixXd::Constant(1, 1, c));
}

MaterialDatabase load_database(const std::string& path,
                               const Eigen::MatrixXd& c) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open database file: " + path);
  std::string line;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      size_t hash = out.find('#');
      if (hash != std::string::npos) out.erase(hash);
      size_t a = out.find_first_not_of(" \t\r");
      if (a == std::string::npos) continue;
      out = out.substr(a, out.find_last_not_of(" \t\r") - a + 1);
      return true;
    }
    return false;
  };
  auto split_csv = [&](const std::string& s) {
    std::vector<double> vals;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      size_t pos = 0;
      double v;
      try {
        v = std::stod(cell, &pos);
      } catch (const std::exception&) {
        throw ConfigError("database file: bad number '" + cell + "'");
      }
      while (pos < cell.size() && std::isspace(cell[pos])) ++pos;
      if (pos != cell.size())
        throw ConfigError("database file: bad number '" + cell + "'");
      vals.push_back(v);
    }
    return vals;
  };
  if (!next_line(line)) throw ConfigError("database file: missing header");
  std::vector<double> header = split_csv(line);
  if (header.size() != 2)
    throw ConfigError("database file: header must hold two block dimensions");
  int m_eps = static_cast<int>(header[0]), m_sig = static_cast<int>(header[1]);
  if (m_eps < 1 || m_sig != m_eps)
    throw ConfigError("database file: unsupported block dimensions");
  std::vector<MaterialPoint> points;
  while (next_line(line)) {
    std::vector<double> vals = split_csv(line);
    if (static_cast<int>(vals.size()) != m_eps + m_sig)
      throw ConfigError("database file: wrong column count");
    MaterialPoint z;
    z.strain = Eigen::Map<Eigen::VectorXd>(vals.data(), m_eps);
    z.stress = Eigen::Map<Eigen::VectorXd>(vals.data() + m_eps, m_sig);
    points.push_back(std::move(z));
  }
  return MaterialDatabase(std::move(points), c);
}

void save_database(const MaterialDatabase& db, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write database file: " + path);
  int m = db.block_dim();
  out << m << "," << m << "\n";
  char buf[32];
  for (int i = 0; i < db.size(); ++i) {
    const MaterialPoint& z = db.point(i);
    for (int j = 0; j < m; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", z.strain[j]);
      out << buf << ",";
    }
    for (int j = 0; j < m; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", z.stress[j]);
      out << buf << (j + 1 < m ? "," : "");
    }
    out << "\n";
  }
}

}  // namespace qmitdd
