#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "folkcat/suites.hpp"

using namespace folkcat;

static SuiteConfig small_config(const std::string& suite, int count) {
  SuiteConfig cfg;
  cfg.suite = suite;
  cfg.seed = 7;
  cfg.count = count;
  cfg.gen = {4, 10, 2, true};
  return cfg;
}

TEST_CASE("every suite runs clean at small scale") {
  for (const std::string& name : suite_names()) {
    SuiteReport rep = run_suite(small_config(name, 10));
    INFO("suite ", name);
    CHECK(rep.failed == 0);
    CHECK(rep.passed == 10);
    for (const CaseResult& r : rep.cases) {
      INFO("case ", r.index, ": ", r.detail);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("identical configs produce byte-identical reports") {
  SuiteConfig cfg = small_config("generators", 8);
  std::string a = describe(run_suite(cfg)).dump(2);
  std::string b = describe(run_suite(cfg)).dump(2);
  CHECK(a == b);
  cfg.seed = 8;
  std::string c = describe(run_suite(cfg)).dump(2);
  CHECK(a != c);
}

TEST_CASE("unknown suite names are rejected") {
  CHECK_THROWS_AS(run_suite(small_config("nonsense", 1)), ShapeError);
}

TEST_CASE("suite reports echo the config and count cases") {
  SuiteConfig cfg = small_config("pseudolimit-criterion", 5);
  SuiteReport rep = run_suite(cfg);
  json j = describe(rep);
  CHECK(j["config"]["suite"] == "pseudolimit-criterion");
  CHECK(j["config"]["seed"] == 7);
  CHECK(j["cases"].size() == 5);
  CHECK(j["passed"].get<int>() + j["failed"].get<int>() == 5);
}
