// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#include "qmitdd/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "qmitdd/errors.hpp"

namespace qmitdd {
namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

double parse_double(const std::string& text, const std::string& what) {
  size_t pos = 0;
  double v;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ConfigError(what + ": not a number: '" + text + "'");
  }
  if (pos != text.size())
    throw ConfigError(what + ": not a number: '" + text + "'");
  return v;
}

long long parse_int(const std::string& text, const std::string& what) {
  // Accept scientific notation for counts like 1e10.
  double v = parse_double(text, what);
  long long n = static_cast<long long>(v);
  if (static_cast<double>(n) != v)
    throw ConfigError(what + ": not an integer: '" + text + "'");
  return n;
}

KeyValues KeyValues::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

KeyValues KeyValues::parse(const std::string& text) {
  KeyValues kv;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key");
    if (kv.values_.count(key))
      throw ConfigError("config: duplicate key '" + key + "'");
    kv.values_[key] = value;
  }
  return kv;
}

bool KeyValues::has(const std::string& key) const {
  return values_.count(key) != 0;
}

void KeyValues::set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

std::string KeyValues::get_string(const std::string& key) {
  auto it = values_.find(key);
  if (it == values_.end())
    throw ConfigError("config: missing required key '" + key + "'");
  consumed_.insert(key);
  return it->second;
}

std::string KeyValues::get_string(const std::string& key,
                                  const std::string& def) {
  consumed_.insert(key);
  auto it = values_.find(key);
  return it == values_.end() ? def : it->second;
}

double KeyValues::get_double(const std::string& key) {
  return parse_double(get_string(key), "config key '" + key + "'");
}

double KeyValues::get_double(const std::string& key, double def) {
  consumed_.insert(key);
  auto it = values_.find(key);
  return it == values_.end()
             ? def
             : parse_double(it->second, "config key '" + key + "'");
}

long long KeyValues::get_int(const std::string& key) {
  return parse_int(get_string(key), "config key '" + key + "'");
}

long long KeyValues::get_int(const std::string& key, long long def) {
  consumed_.insert(key);
  auto it = values_.find(key);
  return it == values_.end()
             ? def
             : parse_int(it->second, "config key '" + key + "'");
}

bool KeyValues::get_bool(const std::string& key, bool def) {
  consumed_.insert(key);
  auto it = values_.find(key);
  if (it == values_.end()) return def;
  const std::string& v = it->second;
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("config key '" + key + "': expected true/false");
}

std::vector<std::string> KeyValues::get_list(const std::string& key,
                                             const std::string& def) {
  std::string raw = get_string(key, def);
  std::vector<std::string> out;
  std::stringstream ss(raw);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::string t = trim(cell);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

std::vector<double> KeyValues::get_double_list(const std::string& key,
                                               const std::string& def) {
  std::vector<double> out;
  for (const std::string& s : get_list(key, def))
    out.push_back(parse_double(s, "config key '" + key + "'"));
  return out;
}

void KeyValues::finish() const {
  for (const auto& [key, value] : values_)
    if (!consumed_.count(key))
      throw ConfigError("config: unknown key '" + key + "'");
}

std::uint64_t KeyValues::hash() const {
  std::uint64_t h = 14695981039346656037ULL;
  auto feed = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& [key, value] : values_) {
    feed(key);
    feed("=");
    feed(value);
    feed("\n");
  }
  return h;
}

}  // namespace qmitdd
