// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdio>
#include <vector>

#include "doctest.h"
#include "qmitdd/dd_solver.hpp"
#include "qmitdd/errors.hpp"
#include "qmitdd/kdtree.hpp"
#include "qmitdd/material.hpp"
#include "qmitdd/rng.hpp"

using namespace qmitdd;

namespace {

RambergOsgoodParams test_params() {
  RambergOsgoodParams p;
  p.e_mod = 1e4;
  p.alpha = 0.5;
  p.sigma0 = 5.0;
  p.beta = 3.0;
  return p;
}

}  // namespace

TEST_SUITE("material") {

TEST_CASE("strain law hand values") {
  RambergOsgoodParams p = test_params();
  CHECK(ramberg_osgood_strain(p, 0.0) == doctest::Approx(0.0));
  // At sigma = sigma0 the plastic term is alpha * sigma0 / E.
  CHECK(ramberg_osgood_strain(p, 5.0) ==
        doctest::Approx(5.0 / 1e4 * 1.5).epsilon(1e-15));
  // Generic point: eps = s/E (1 + alpha (|s|/s0)^(beta-1)).
  double s = 3.7;
  CHECK(ramberg_osgood_strain(p, s) ==
        doctest::Approx(s / 1e4 * (1 + 0.5 * std::pow(s / 5.0, 2.0)))
            .epsilon(1e-15));
}

TEST_CASE("strain law is odd and strictly increasing") {
  RambergOsgoodParams p = test_params();
  double prev = ramberg_osgood_strain(p, -10.0);
  for (double s = -9.5; s <= 10.0; s += 0.5) {
    double e = ramberg_osgood_strain(p, s);
    CHECK(e > prev);
    CHECK(e == doctest::Approx(-ramberg_osgood_strain(p, -s)).epsilon(1e-15));
    prev = e;
  }
}

TEST_CASE("stress inverse matches the forward law") {
  RambergOsgoodParams p = test_params();
  for (double s = -10.0; s <= 10.0; s += 0.1) {
    double eps = ramberg_osgood_strain(p, s);
    CHECK(ramberg_osgood_stress(p, eps) == doctest::Approx(s).epsilon(1e-10));
  }
  CHECK(ramberg_osgood_stress(p, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("parameter validation") {
  RambergOsgoodParams p = test_params();
  CHECK_NOTHROW(p.validate());
  RambergOsgoodParams bad = p;
  bad.e_mod = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = p;
  bad.beta = 0.5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = p;
  bad.sigma0 = -1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("generated database spans the stress range consistently") {
  RambergOsgoodParams p = test_params();
  MaterialDatabase db = generate_db(p, -6, 6, 161, 2500);
  CHECK(db.size() == 161);
  CHECK(db.block_dim() == 1);
  CHECK(db.point(0).stress[0] == doctest::Approx(-6.0));
  CHECK(db.point(160).stress[0] == doctest::Approx(6.0));
  double spacing = 12.0 / 160;
  for (int i = 0; i < db.size(); ++i) {
    double s = db.point(i).stress[0];
    CHECK(s == doctest::Approx(-6 + spacing * i).epsilon(1e-12));
    CHECK(db.point(i).strain[0] ==
          doctest::Approx(ramberg_osgood_strain(p, s)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(generate_db(p, -6, 6, 1, 2500), ConfigError);
  CHECK_THROWS_AS(generate_db(p, 6, -6, 11, 2500), ConfigError);
}

TEST_CASE("scaling maps points into the metric coordinates") {
  RambergOsgoodParams p = test_params();
  const double c = 2500;
  MaterialDatabase db = generate_db(p, -6, 6, 21, c);
  for (int i = 0; i < db.size(); ++i) {
    const MaterialPoint& z = db.point(i);
    Vector v = db.scale_point(z);
    REQUIRE(v.size() == 2);
    CHECK(v[0] == doctest::Approx(std::sqrt(c) * z.strain[0]).epsilon(1e-14));
    CHECK(v[1] == doctest::Approx(z.stress[0] / std::sqrt(c)).epsilon(1e-14));
    CHECK((db.scaled()[static_cast<size_t>(i)] - v).norm() == 0.0);
    MaterialPoint back = db.unscale_point(v);
    CHECK(back.strain[0] == doctest::Approx(z.strain[0]).epsilon(1e-12));
    CHECK(back.stress[0] == doctest::Approx(z.stress[0]).epsilon(1e-12));
  }
}

TEST_CASE("scaled euclidean distance equals the energy metric") {
  RambergOsgoodParams p = test_params();
  const double c = 2500;
  MaterialDatabase db = generate_db(p, -6, 6, 21, c);
  const MaterialPoint& a = db.point(3);
  const MaterialPoint& b = db.point(15);
  double de = a.strain[0] - b.strain[0];
  double ds = a.stress[0] - b.stress[0];
  double metric = c * de * de + ds * ds / c;
  double euclid =
      (db.scale_point(a) - db.scale_point(b)).squaredNorm();
  CHECK(euclid == doctest::Approx(metric).epsilon(1e-12));
}

TEST_CASE("scaling matrix must be symmetric positive definite") {
  std::vector<MaterialPoint> pts(2);
  pts[0].strain = Eigen::VectorXd::Constant(1, 0.0);
  pts[0].stress = Eigen::VectorXd::Constant(1, 0.0);
  pts[1].strain = Eigen::VectorXd::Constant(1, 1e-3);
  pts[1].stress = Eigen::VectorXd::Constant(1, 5.0);
  Eigen::MatrixXd good(1, 1), negative(1, 1);
  good << 2500;
  negative << -1;
  CHECK_NOTHROW(MaterialDatabase(pts, good));
  CHECK_THROWS_AS(MaterialDatabase(pts, negative), ConfigError);
  CHECK_THROWS_AS(MaterialDatabase(std::vector<MaterialPoint>{}, good),
                  ConfigError);
}

TEST_CASE("database file round trip") {
  RambergOsgoodParams p = test_params();
  MaterialDatabase db = generate_db(p, -6, 6, 33, 2500);
  const std::string path = "/tmp/qmitdd_test_db.txt";
  save_database(db, path);
  Eigen::MatrixXd c(1, 1);
  c << 2500;
  MaterialDatabase loaded = load_database(path, c);
  REQUIRE(loaded.size() == db.size());
  for (int i = 0; i < db.size(); ++i) {
    CHECK(loaded.point(i).strain[0] == db.point(i).strain[0]);
    CHECK(loaded.point(i).stress[0] == db.point(i).stress[0]);
  }
  CHECK_THROWS_AS(load_database("/nonexistent/db.txt", c), ConfigError);
  std::remove(path.c_str());
}

TEST_CASE("kd tree equals brute force over many queries") {
  RambergOsgoodParams p = test_params();
  MaterialDatabase db = generate_db(p, -6, 6, 161, 2500);
  KdTree tree(db.scaled(), 8);
  CHECK(tree.size() == 161);
  RngStream rng(61, 0);
  long total_calls = 0;
  const int queries = 1000;
  // Query box spans the scaled coordinates with margin.
  double lo0 = db.scaled().front()[0], hi0 = db.scaled().back()[0];
  for (int qi = 0; qi < queries; ++qi) {
    Vector q(2);
    q[0] = lo0 + (hi0 - lo0) * (1.2 * rng.uniform() - 0.1);
    q[1] = db.scaled().front()[1] +
           (db.scaled().back()[1] - db.scaled().front()[1]) *
               (1.2 * rng.uniform() - 0.1);
    ExactBackend backend;
    KdTree::QueryResult res = tree.nearest(q, backend);
    int best = -1;
    double best_d = 0;
    for (int i = 0; i < db.size(); ++i) {
      double d = (q - db.scaled()[static_cast<size_t>(i)]).squaredNorm();
      if (best < 0 || d < best_d) {
        best = i;
        best_d = d;
      }
    }
    CHECK(res.index == best);
    CHECK(res.distance == doctest::Approx(best_d).epsilon(1e-12));
    CHECK(res.n_calls <= db.size());
    total_calls += res.n_calls;
  }
  CHECK(static_cast<double>(total_calls) / queries < db.size() / 2.0);
}

TEST_CASE("kd tree breaks ties toward the lowest index") {
  // Two identical points: both searches must return index 0.
  std::vector<Vector> pts;
  Vector a(2), b(2), c(2);
  a << 1, 1;
  b << 1, 1;
  c << 3, 3;
  pts.push_back(a);
  pts.push_back(b);
  pts.push_back(c);
  KdTree tree(pts, 1);
  ExactBackend backend;
  Vector q(2);
  q << 1, 1.1;
  CHECK(tree.nearest(q, backend).index == 0);
}

TEST_CASE("brute force searcher touches every point") {
  RambergOsgoodParams p = test_params();
  MaterialDatabase db = generate_db(p, -6, 6, 41, 2500);
  BruteForceSearcher brute(db);
  Vector q(2);
  q << 0.01, -0.02;
  KdTree::QueryResult res = brute.nearest(q, 0);
  CHECK(res.n_calls == db.size());
  KdTreeSearcher kd(db, 8);
  KdTree::QueryResult res2 = kd.nearest(q, 0);
  CHECK(res2.index == res.index);
  CHECK(res2.n_calls <= res.n_calls);
}

}  // TEST_SUITE
