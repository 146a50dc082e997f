// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#include "qmitdd/truss.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qmitdd/errors.hpp"

namespace qmitdd {

void TrussModel::validate() const {
  if (nodes.empty() || bars.empty())
    throw ConfigError("truss: needs nodes and bars");
  if (fixed.size() != nodes.size() || loads.size() != nodes.size())
    throw ConfigError("truss: support/load tables sized to node count");
  for (const Bar& b : bars) {
    if (b.n1 < 0 || b.n1 >= n_nodes() || b.n2 < 0 || b.n2 >= n_nodes())
      throw ConfigError("truss: bar references unknown node");
    if (b.n1 == b.n2) throw ConfigError("truss: bar connects a node to itself");
    if (!(b.area > 0)) throw ConfigError("truss: bar area must be positive");
    double dx = nodes[static_cast<size_t>(b.n2)][0] -
                nodes[static_cast<size_t>(b.n1)][0];
    double dy = nodes[static_cast<size_t>(b.n2)][1] -
                nodes[static_cast<size_t>(b.n1)][1];
    if (std::hypot(dx, dy) <= 0) throw ConfigError("truss: zero-length bar");
  }
}

TrussModel load_truss(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open truss file: " + path);
  enum Section { kNone, kNodes, kBars, kSupports, kLoads } section = kNone;
  struct NodeRow {
    double x, y;
  };
  std::vector<NodeRow> nodes;
  std::vector<std::array<double, 4>> bar_rows;      // id n1 n2 A
  std::vector<std::array<double, 3>> support_rows;  // node fx fy
  std::vector<std::array<double, 3>> load_rows;     // node Fx Fy
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::stringstream ss(line);
    std::string first;
    if (!(ss >> first)) continue;
    if (first == "NODES") {
      section = kNodes;
      continue;
    }
    if (first == "BARS") {
      section = kBars;
      continue;
    }
    if (first == "SUPPORTS") {
      section = kSupports;
      continue;
    }
    if (first == "LOADS") {
      section = kLoads;
      continue;
    }
    std::vector<double> vals;
    try {
      size_t pos = 0;
      vals.push_back(std::stod(first, &pos));
      if (pos != first.size()) throw std::invalid_argument(first);
      double v;
      while (ss >> v) vals.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("truss file line " + std::to_string(lineno) +
                        ": bad number");
    }
    if (!ss.eof())
      throw ConfigError("truss file line " + std::to_string(lineno) +
                        ": trailing junk");
    auto expect = [&](size_t n) {
      if (vals.size() != n)
        throw ConfigError("truss file line " + std::to_string(lineno) +
                          ": wrong field count");
    };
    switch (section) {
      case kNodes: {
        expect(3);
        int id = static_cast<int>(vals[0]);
        if (id != static_cast<int>(nodes.size()) + 1)
          throw ConfigError("truss file: node ids must be 1..N in order");
        nodes.push_back(NodeRow{vals[1], vals[2]});
        break;
      }
      case kBars:
        expect(4);
        bar_rows.push_back({vals[0], vals[1], vals[2], vals[3]});
        break;
      case kSupports:
        expect(3);
        support_rows.push_back({vals[0], vals[1], vals[2]});
        break;
      case kLoads:
        expect(3);
        load_rows.push_back({vals[0], vals[1], vals[2]});
        break;
      case kNone:
        throw ConfigError("truss file line " + std::to_string(lineno) +
                          ": data before any section header");
    }
  }
  TrussModel t;
  for (const NodeRow& n : nodes) t.nodes.push_back({n.x, n.y});
  t.fixed.assign(t.nodes.size(), {false, false});
  t.loads.assign(t.nodes.size(), {0.0, 0.0});
  auto node_ref = [&](double v) {
    int id = static_cast<int>(v);
    if (id < 1 || id > t.n_nodes())
      throw ConfigError("truss file: node id out of range");
    return id - 1;
  };
  for (size_t i = 0; i < bar_rows.size(); ++i) {
    if (static_cast<int>(bar_rows[i][0]) != static_cast<int>(i) + 1)
      throw ConfigError("truss file: bar ids must be 1..M in order");
    Bar b;
    b.n1 = node_ref(bar_rows[i][1]);
    b.n2 = node_ref(bar_rows[i][2]);
    b.area = bar_rows[i][3];
    t.bars.push_back(b);
  }
  for (const auto& s : support_rows) {
    int n = node_ref(s[0]);
    t.fixed[static_cast<size_t>(n)] = {s[1] != 0.0, s[2] != 0.0};
  }
  for (const auto& l : load_rows) {
    int n = node_ref(l[0]);
    t.loads[static_cast<size_t>(n)][0] += l[1];
    t.loads[static_cast<size_t>(n)][1] += l[2];
  }
  t.validate();
  return t;
}

Assembly assemble(const TrussModel& truss, double c) {
  truss.validate();
  if (!(c > 0)) throw ConfigError("assembly: scaling modulus must be positive");
  Assembly a;
  a.c = c;
  a.free_index.assign(static_cast<size_t>(2 * truss.n_nodes()), -1);
  for (int n = 0; n < truss.n_nodes(); ++n)
    for (int dir = 0; dir < 2; ++dir)
      if (!truss.fixed[static_cast<size_t>(n)][static_cast<size_t>(dir)])
        a.free_index[static_cast<size_t>(2 * n + dir)] = a.n_free++;
  if (a.n_free == 0) throw ConfigError("assembly: all DOFs constrained");

  int m = truss.n_bars();
  a.length.resize(m);
  a.weight.resize(m);
  a.b = Eigen::MatrixXd::Zero(m, a.n_free);
  for (int e = 0; e < m; ++e) {
    const Bar& bar = truss.bars[static_cast<size_t>(e)];
    double dx = truss.nodes[static_cast<size_t>(bar.n2)][0] -
                truss.nodes[static_cast<size_t>(bar.n1)][0];
    double dy = truss.nodes[static_cast<size_t>(bar.n2)][1] -
                truss.nodes[static_cast<size_t>(bar.n1)][1];
    double len = std::hypot(dx, dy);
    a.length[e] = len;
    a.weight[e] = bar.area * len;
    double tx = dx / len, ty = dy / len;
    const double entries[4] = {-tx / len, -ty / len, tx / len, ty / len};
    const int dofs[4] = {2 * bar.n1, 2 * bar.n1 + 1, 2 * bar.n2,
                         2 * bar.n2 + 1};
    for (int j = 0; j < 4; ++j) {
      int idx = a.free_index[static_cast<size_t>(dofs[j])];
      if (idx >= 0) a.b(e, idx) = entries[j];
    }
  }

  a.f = Eigen::VectorXd::Zero(a.n_free);
  for (int n = 0; n < truss.n_nodes(); ++n)
    for (int dir = 0; dir < 2; ++dir) {
      int idx = a.free_index[static_cast<size_t>(2 * n + dir)];
      if (idx >= 0)
        a.f[idx] = truss.loads[static_cast<size_t>(n)][static_cast<size_t>(dir)];
    }

  Eigen::MatrixXd k =
      a.b.transpose() * (a.weight.array() * c).matrix().asDiagonal() * a.b;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
  if (es.info() != Eigen::Success ||
      es.eigenvalues().minCoeff() <= 1e-10 * es.eigenvalues().maxCoeff())
    throw ConfigError("assembly: singular stiffness, under-constrained truss");
  a.k_llt.compute(k);
  if (a.k_llt.info() != Eigen::Success)
    throw ConfigError("assembly: stiffness factorization failed");
  return a;
}

}  // namespace qmitdd
