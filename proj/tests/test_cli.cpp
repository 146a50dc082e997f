// Copyright 2026 The qmitdd Authors
// SPDX-License-Identifier: Apache-2.0

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "qmitdd/config.hpp"
#include "qmitdd/errors.hpp"

using namespace qmitdd;

#ifndef QMITDD_BIN_DIR
#define QMITDD_BIN_DIR "build"
#endif
#ifndef QMITDD_DATA_DIR
#define QMITDD_DATA_DIR "data"
#endif

namespace {

std::string binary() { return std::string(QMITDD_BIN_DIR) + "/qmitdd"; }

int run(const std::string& args) {
  std::string cmd = binary() + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string write_temp(const std::string& name, const std::string& body) {
  std::string path = "/tmp/qmitdd_cli_" + name;
  std::ofstream out(path);
  out << body;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kTinyBench =
    "dimension = 2\n"
    "pairs = 3\n"
    "n_m = 0\n";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("key value parsing and typed getters") {
  KeyValues kv = KeyValues::parse(
      "# comment\n"
      "alpha = 1.5\n"
      "count = 42\n"
      "name = hello world\n"
      "flag = true\n"
      "items = a, b, c\n"
      "nums = 1e2, 3\n");
  CHECK(kv.get_double("alpha") == 1.5);
  CHECK(kv.get_int("count") == 42);
  CHECK(kv.get_string("name") == "hello world");
  CHECK(kv.get_bool("flag", false));
  auto items = kv.get_list("items", "");
  REQUIRE(items.size() == 3);
  CHECK(items[0] == "a");
  CHECK(items[2] == "c");
  auto nums = kv.get_double_list("nums", "");
  REQUIRE(nums.size() == 2);
  CHECK(nums[0] == 100.0);
  CHECK(nums[1] == 3.0);
  CHECK_NOTHROW(kv.finish());
}

TEST_CASE("defaults, overrides, and error cases") {
  KeyValues kv = KeyValues::parse("a = 1\n");
  CHECK(kv.get_int("missing", 7) == 7);
  CHECK(kv.get_string("missing", "x") == "x");
  CHECK_THROWS_AS(kv.get_int("absent"), ConfigError);
  kv.set("a", "2");
  CHECK(kv.get_int("a") == 2);
  CHECK(kv.has("a"));
  CHECK(!kv.has("b"));
  KeyValues bad = KeyValues::parse("x = not_a_number\n");
  CHECK_THROWS_AS(bad.get_int("x"), ConfigError);
  KeyValues bad2 = KeyValues::parse("x = 1.5\n");
  CHECK_THROWS_AS(bad2.get_int("x"), ConfigError);
  CHECK_THROWS_AS(KeyValues::parse("just a line without equals\n"),
                  ConfigError);
}

TEST_CASE("finish rejects unconsumed keys so typos fail loudly") {
  KeyValues kv = KeyValues::parse("used = 1\nunused = 2\n");
  CHECK(kv.get_int("used") == 1);
  CHECK_THROWS_AS(kv.finish(), ConfigError);
}

TEST_CASE("config hash is order independent and value sensitive") {
  KeyValues a = KeyValues::parse("x = 1\ny = 2\n");
  KeyValues b = KeyValues::parse("y = 2\nx = 1\n");
  KeyValues c = KeyValues::parse("x = 1\ny = 3\n");
  CHECK(a.hash() == b.hash());
  CHECK(a.hash() != c.hash());
  KeyValues d = KeyValues::parse("x = 1\n");
  CHECK(a.hash() != d.hash());
}

TEST_CASE("successful run writes its outputs and exits zero") {
  std::string cfg = write_temp("ok.cfg", kTinyBench);
  CHECK(run("dist-bench --config " + cfg + " --out /tmp/qmitdd_cli_out") == 0);
  std::string csv = slurp("/tmp/qmitdd_cli_out/dist_bench.csv");
  CHECK(csv.find("config_hash") != std::string::npos);
  CHECK(slurp("/tmp/qmitdd_cli_out/summary.json").find("nrmse") !=
        std::string::npos);
  CHECK(slurp("/tmp/qmitdd_cli_out/timings.json").find("total_seconds") !=
        std::string::npos);
}

TEST_CASE("config errors exit with code 2") {
  CHECK(run("dist-bench") == 2);  // --config is required
  CHECK(run("dist-bench --config /nonexistent.cfg") == 2);
  std::string cfg = write_temp("unknown_exp.cfg", kTinyBench);
  CHECK(run("warp-drive --config " + cfg) == 2);
  std::string bad = write_temp("typo.cfg",
                               std::string(kTinyBench) + "paris = 7\n");
  CHECK(run("dist-bench --config " + bad) == 2);
  std::string neg = write_temp("neg.cfg",
                               std::string(kTinyBench) + "seed = -4\n");
  CHECK(run("dist-bench --config " + neg) == 2);
  // An output directory that cannot be created is a configuration mistake.
  CHECK(run("dist-bench --config " + cfg + " --out /dev/null/x") == 2);
}

TEST_CASE("runtime failures exit with code 3") {
  std::string cfg = write_temp("rt.cfg", kTinyBench);
  // A directory squatting on the CSV name makes the output unwritable only
  // after the run has started.
  std::system("rm -rf /tmp/qmitdd_cli_blocked && "
              "mkdir -p /tmp/qmitdd_cli_blocked/dist_bench.csv");
  CHECK(run("dist-bench --config " + cfg +
            " --out /tmp/qmitdd_cli_blocked") == 3);
}

TEST_CASE("outputs are byte identical across runs and thread counts") {
  std::string cfg = write_temp("det.cfg",
                               "dimension = 3\n"
                               "pairs = 6\n"
                               "n_m = 1e4\n"
                               "seed = 11\n");
  REQUIRE(run("dist-bench --config " + cfg +
              " --parallel 1 --out /tmp/qmitdd_cli_det1") == 0);
  REQUIRE(run("dist-bench --config " + cfg +
              " --parallel 4 --out /tmp/qmitdd_cli_det4") == 0);
  REQUIRE(run("dist-bench --config " + cfg +
              " --parallel 4 --out /tmp/qmitdd_cli_det4b") == 0);
  std::string a = slurp("/tmp/qmitdd_cli_det1/dist_bench.csv");
  CHECK(a == slurp("/tmp/qmitdd_cli_det4/dist_bench.csv"));
  CHECK(a == slurp("/tmp/qmitdd_cli_det4b/dist_bench.csv"));
  CHECK(slurp("/tmp/qmitdd_cli_det1/summary.json") ==
        slurp("/tmp/qmitdd_cli_det4/summary.json"));
}

TEST_CASE("the seed flag overrides the config file value") {
  std::string with_seed = write_temp("seed5.cfg",
                                     std::string(kTinyBench) + "seed = 5\n");
  std::string base = write_temp("seed0.cfg", kTinyBench);
  REQUIRE(run("dist-bench --config " + base +
              " --seed 5 --out /tmp/qmitdd_cli_sa") == 0);
  REQUIRE(run("dist-bench --config " + with_seed +
              " --out /tmp/qmitdd_cli_sb") == 0);
  REQUIRE(run("dist-bench --config " + with_seed +
              " --seed 6 --out /tmp/qmitdd_cli_sc") == 0);
  // Flag and file agree on seed 5: identical outputs, including the hash.
  CHECK(slurp("/tmp/qmitdd_cli_sa/dist_bench.csv") ==
        slurp("/tmp/qmitdd_cli_sb/dist_bench.csv"));
  // Overriding to seed 6 changes the config hash in every row.
  CHECK(slurp("/tmp/qmitdd_cli_sa/dist_bench.csv") !=
        slurp("/tmp/qmitdd_cli_sc/dist_bench.csv"));
}

}  // TEST_SUITE
