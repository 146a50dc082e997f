// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#include "qmitdd/kdtree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "qmitdd/errors.hpp"
#include "qmitdd/rng.hpp"

namespace qmitdd {

double ExactBackend::distance(const Vector& query, const Vector& point,
                              int point_index) {
  (void)point_index;
  return (query - point).squaredNorm();
}

QuantumBackend::QuantumBackend(const DistanceCalculator* calc,
                               std::uint64_t query_id)
    : calc_(calc), query_id_(query_id) {}

double QuantumBackend::distance(const Vector& query, const Vector& point,
                                int point_index) {
  double a = query.squaredNorm(), b = point.squaredNorm();
  if (a == 0.0 || b == 0.0) return a + b;
  return calc_
      ->estimate(query, point,
                 mix_ids(query_id_, static_cast<std::uint64_t>(point_index)))
      .d_hat;
}

KdTree::KdTree(std::vector<Vector> points, int leaf_size)
    : points_(std::move(points)) {
  if (points_.empty()) throw SimError("k-d tree: empty point set");
  if (leaf_size < 1) throw SimError("k-d tree: leaf size must be >= 1");
  for (const Vector& p : points_)
    if (p.size() != points_[0].size())
      throw SimError("k-d tree: inconsistent point dimensions");
  order_.resize(points_.size());
  std::iota(order_.begin(), order_.end(), 0);
  nodes_.reserve(2 * points_.size() / static_cast<size_t>(leaf_size) + 2);
  build(0, static_cast<int>(points_.size()), leaf_size);
}

int KdTree::build(int begin, int end, int leaf_size) {
  int id = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{});
  if (end - begin <= leaf_size) {
    nodes_[static_cast<size_t>(id)].begin = begin;
    nodes_[static_cast<size_t>(id)].end = end;
    return id;
  }
  int dims = static_cast<int>(points_[0].size());
  int split_dim = 0;
  double widest = -1;
  for (int d = 0; d < dims; ++d) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = begin; i < end; ++i) {
      double x = points_[static_cast<size_t>(order_[static_cast<size_t>(i)])]
                        [d];
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    if (hi - lo > widest) {
      widest = hi - lo;
      split_dim = d;
    }
  }
  int mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid,
                   order_.begin() + end, [&](int a, int b) {
                     return points_[static_cast<size_t>(a)][split_dim] <
                            points_[static_cast<size_t>(b)][split_dim];
                   });
  double threshold =
      points_[static_cast<size_t>(order_[static_cast<size_t>(mid)])][split_dim];
  int left = build(begin, mid, leaf_size);
  int right = build(mid, end, leaf_size);
  Node& node = nodes_[static_cast<size_t>(id)];
  node.dim = split_dim;
  node.threshold = threshold;
  node.left = left;
  node.right = right;
  return id;
}

void KdTree::search(int node, const Vector& query, DistanceBackend& backend,
                    QueryResult& best) const {
  const Node& nd = nodes_[static_cast<size_t>(node)];
  if (nd.dim < 0) {
    for (int i = nd.begin; i < nd.end; ++i) {
      int idx = order_[static_cast<size_t>(i)];
      double d;
      try {
        d = backend.distance(query, points_[static_cast<size_t>(idx)], idx);
      } catch (const std::exception& e) {
        throw SimError("distance backend failed at point " +
                       std::to_string(idx) + ": " + e.what());
      }
      ++best.n_calls;
      if (best.index < 0 || d < best.distance ||
          (d == best.distance && idx < best.index)) {
        best.distance = d;
        best.index = idx;
      }
    }
    return;
  }
  double diff = query[nd.dim] - nd.threshold;
  int near = diff <= 0 ? nd.left : nd.right;
  int far = diff <= 0 ? nd.right : nd.left;
  search(near, query, backend, best);
  if (best.index < 0 || diff * diff <= best.distance)
    search(far, query, backend, best);
}

KdTree::QueryResult KdTree::nearest(const Vector& query,
                                    DistanceBackend& backend) const {
  if (query.size() != points_[0].size())
    throw SimError("k-d tree: query dimension mismatch");
  QueryResult best;
  best.distance = std::numeric_limits<double>::infinity();
  search(0, query, backend, best);
  return best;
}

}  // namespace qmitdd
