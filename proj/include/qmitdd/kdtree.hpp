// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QMITDD_KDTREE_HPP_
#define QMITDD_KDTREE_HPP_

#include <cstdint>
#include <vector>

#include "qmitdd/distance.hpp"
#include "qmitdd/zne.hpp"

namespace qmitdd {

// Point-to-query squared-distance oracle used at the leaves; pruning always
// uses classical coordinate arithmetic regardless of the backend.
class DistanceBackend {
 public:
  virtual ~DistanceBackend() = default;
  virtual double distance(const Vector& query, const Vector& point,
                          int point_index) = 0;
};

class ExactBackend : public DistanceBackend {
 public:
  double distance(const Vector& query, const Vector& point,
                  int point_index) override;
};

// Delegates to the quantum distance pipeline. Each (query, point) pair uses
// the stream mix_ids(query_id, point_index), so parallel queries stay
// reproducible. Zero-norm inputs cannot be amplitude-encoded; for them the
// distance reduces to |V|^2 + |V'|^2, computed classically.
class QuantumBackend : public DistanceBackend {
 public:
  QuantumBackend(const DistanceCalculator* calc, std::uint64_t query_id);
  double distance(const Vector& query, const Vector& point,
                  int point_index) override;

 private:
  const DistanceCalculator* calc_;
  std::uint64_t query_id_;
};

class KdTree {
 public:
  struct QueryResult {
    int index = -1;
    double distance = 0;
    int n_calls = 0;
  };

  explicit KdTree(std::vector<Vector> points, int leaf_size = 8);

  int size() const { return static_cast<int>(points_.size()); }
  const Vector& point(int i) const { return points_[static_cast<size_t>(i)]; }

  // Branch-and-bound nearest neighbor; every point-to-query evaluation goes
  // through the backend and is counted. Ties go to the lowest index.
  QueryResult nearest(const Vector& query, DistanceBackend& backend) const;

 private:
  struct Node {
    int dim = -1;        // -1 marks a leaf
    double threshold = 0;
    int left = -1, right = -1;
    int begin = 0, end = 0;  // leaf range in order_
  };

  int build(int begin, int end, int leaf_size);
  void search(int node, const Vector& query, DistanceBackend& backend,
              QueryResult& best) const;

  std::vector<Vector> points_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
};

}  // namespace qmitdd

#endif  // QMITDD_KDTREE_HPP_
