// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QMITDD_CONFIG_HPP_
#define QMITDD_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace qmitdd {

// key = value lines, '#' comments. Typed getters mark keys consumed;
// finish() rejects anything left over, so typos fail loudly.
class KeyValues {
 public:
  KeyValues() = default;
  static KeyValues load(const std::string& path);
  static KeyValues parse(const std::string& text);

  bool has(const std::string& key) const;
  void set(const std::string& key, const std::string& value);

  std::string get_string(const std::string& key);
  std::string get_string(const std::string& key, const std::string& def);
  double get_double(const std::string& key);
  double get_double(const std::string& key, double def);
  long long get_int(const std::string& key);
  long long get_int(const std::string& key, long long def);
  bool get_bool(const std::string& key, bool def);
  std::vector<std::string> get_list(const std::string& key,
                                    const std::string& def);
  std::vector<double> get_double_list(const std::string& key,
                                      const std::string& def);

  // Throws ConfigError when any key was never consumed.
  void finish() const;

  // FNV-1a over the sorted canonical "key=value\n" serialization.
  std::uint64_t hash() const;

 private:
  std::map<std::string, std::string> values_;
  std::set<std::string> consumed_;
};

double parse_double(const std::string& text, const std::string& what);
long long parse_int(const std::string& text, const std::string& what);

}  // namespace qmitdd

#endif  // QMITDD_CONFIG_HPP_
