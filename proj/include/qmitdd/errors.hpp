// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QMITDD_ERRORS_HPP_
#define QMITDD_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace qmitdd {

// Bad user input: malformed config/data files, invalid parameter ranges.
// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Violated numerical contract or internal failure at run time (broken
// density-matrix invariant, non-convergent solve, capacity overflow).
// The CLI maps this to exit code 3.
class SimError : public std::runtime_error {
 public:
  explicit SimError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace qmitdd

#endif  // QMITDD_ERRORS_HPP_
