#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "hypoflow/config.hpp"
#include "hypoflow/report.hpp"

using namespace hypoflow;

TEST_SUITE_BEGIN("cli");

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/hypoflow_test_" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("config parsing") {
  std::string path = write_temp("cfg.ini",
                                "# comment\n"
                                "[run]\n"
                                "model = kolmogorov\n"
                                "seed = 42   # trailing\n"
                                "\n"
                                "[martin]\n"
                                "w1 = 0.0, 0.5\n"
                                "k_list = 100,1000\n");
  auto cfg = ExperimentConfig::from_file(path);
  CHECK(cfg.get("run", "model") == "kolmogorov");
  CHECK(cfg.get_long("run", "seed", 0) == 42);
  auto w1 = cfg.get_list("martin", "w1", {});
  REQUIRE(w1.size() == 2);
  CHECK(w1[1] == 0.5);
  CHECK(cfg.get("run", "missing", "fallback") == "fallback");

  cfg.set("run", "seed", "7");
  CHECK(cfg.get_long("run", "seed", 0) == 7);

  std::map<std::string, std::set<std::string>> allowed = {
      {"run", {"model", "seed"}}, {"martin", {"w1", "k_list"}}};
  CHECK_NOTHROW(cfg.validate(allowed));

  cfg.set("run", "bogus", "1");
  CHECK_THROWS_AS(cfg.validate(allowed), ConfigError);
}

TEST_CASE("config syntax errors") {
  CHECK_THROWS_AS(ExperimentConfig::from_file("/nonexistent/cfg.ini"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_file(write_temp("bad1.ini", "key = 1\n")),
                  ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_file(write_temp("bad2.ini", "[run\nk = 1\n")),
                  ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_file(write_temp("bad3.ini", "[run]\nnovalue\n")),
                  ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse_list("1.0,x"), ConfigError);
}

TEST_CASE("report bookkeeping and serialization") {
  Report r;
  r.suite = "demo";
  r.config_echo = {{"run.model", "heat"}, {"run.seed", "1"}};
  r.check_le("residual", "heat|case1", 1e-12, 1e-10);
  r.check_le("overshoot", "heat|case2", 2.0, 1.0);
  r.check_true("flag", "heat|case3", true);
  CHECK(r.total() == 3);
  CHECK(r.passed() == 2);
  CHECK(r.failed() == 1);
  CHECK_FALSE(r.all_pass());

  std::string csv = to_csv(r);
  CHECK(csv.find("# suite,demo") != std::string::npos);
  CHECK(csv.find("# config,run.model,heat") != std::string::npos);
  CHECK(csv.find("residual,") != std::string::npos);
  CHECK(csv.find(",0\n") != std::string::npos);
  CHECK(csv.find("# summary,total=3,passed=2,failed=1") != std::string::npos);

  std::string json = to_json(r);
  CHECK(json.find("\"suite\": \"demo\"") != std::string::npos);
  CHECK(json.find("\"passed\": 2") != std::string::npos);
  CHECK(json.find("wall") == std::string::npos);  // never serialized

  // serialization is a pure function of the content
  Report r2 = r;
  r2.wall_ms = 9999.0;
  CHECK(to_json(r2) == json);
  CHECK(to_csv(r2) == csv);
}

TEST_CASE("digest is stable") {
  CHECK(digest("abc") == digest("abc"));
  CHECK(digest("abc") != digest("abd"));
  CHECK(digest("").size() == 16);
}

TEST_CASE("atomic write") {
  std::string path = "/tmp/hypoflow_test_atomic.txt";
  atomic_write(path, "hello\n");
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "hello");
  atomic_write(path, "replaced\n");
  std::ifstream in2(path);
  std::getline(in2, line);
  CHECK(line == "replaced");
  std::remove(path.c_str());
}

TEST_SUITE_END();
