// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QMITDD_MATERIAL_HPP_
#define QMITDD_MATERIAL_HPP_

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qmitdd/distance.hpp"

namespace qmitdd {

struct RambergOsgoodParams {
  double e_mod = 1e4;   // E, MPa
  double alpha = 0.5;
  double sigma0 = 5.0;  // MPa
  double beta = 3.0;

  void validate() const;  // throws ConfigError
};

// eps = sigma/E + alpha * (sigma/E) * (|sigma|/sigma0)^(beta-1)
double ramberg_osgood_strain(const RambergOsgoodParams& p, double sigma);

// Inverse of the monotone strain law, safeguarded Newton/bisection to 1e-12.
double ramberg_osgood_stress(const RambergOsgoodParams& p, double eps);

// One admissible material state; strain and stress blocks have equal
// dimension (1 for bar elements).
struct MaterialPoint {
  Eigen::VectorXd strain;
  Eigen::VectorXd stress;
};

// Point set together with the scaling C that turns the energy-like metric
// into a Euclidean one: V = (C^{1/2} eps, C^{-1/2} sigma).
class MaterialDatabase {
 public:
  MaterialDatabase(std::vector<MaterialPoint> points, Eigen::MatrixXd c);

  int size() const { return static_cast<int>(points_.size()); }
  int block_dim() const { return static_cast<int>(c_.rows()); }
  const MaterialPoint& point(int i) const {
    return points_[static_cast<size_t>(i)];
  }
  const Eigen::MatrixXd& c() const { return c_; }

  Vector scale_point(const MaterialPoint& z) const;
  MaterialPoint unscale_point(const Vector& v) const;

  // Scaled coordinates of every database point, indexed like point().
  const std::vector<Vector>& scaled() const { return scaled_; }

 private:
  std::vector<MaterialPoint> points_;
  Eigen::MatrixXd c_, c_sqrt_, c_inv_sqrt_;
  std::vector<Vector> scaled_;
};

// N uniformly spaced stresses in [sigma_min, sigma_max] with Ramberg-Osgood
// strains; scalar scaling c (default: the elastic modulus).
MaterialDatabase generate_db(const RambergOsgoodParams& p, double sigma_min,
                             double sigma_max, int n, double c);

// One point per line "strain...,stress..."; header row holds the two block
// dimensions.
MaterialDatabase load_database(const std::string& path,
                               const Eigen::MatrixXd& c);
void save_database(const MaterialDatabase& db, const std::string& path);

}  // namespace qmitdd

#endif  // QMITDD_MATERIAL_HPP_
