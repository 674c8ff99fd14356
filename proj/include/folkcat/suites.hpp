#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "folkcat/generate.hpp"
#include "folkcat/report.hpp"

namespace folkcat {

inline constexpr const char* kToolVersion = "folkcat 0.1.0";

/// Names accepted by run_suite.
std::vector<std::string> suite_names();

struct SuiteConfig {
  std::string suite;
  std::uint64_t seed = 1;
  int count = 100;
  GenConfig gen;
  int bound = 50;                       // coinserter budget
  int probe_size = 2;                   // max probe objects (weights suite)
  std::uint64_t guard = kDefaultGuard;  // functor-space enumeration cap
};

struct CaseResult {
  int index = 0;
  bool pass = false;
  bool guard_tripped = false;  // reported, not counted as a failure
  std::string detail;
  json input;  // replayable dump of the sampled instance
};

struct SuiteReport {
  std::string tool_version = kToolVersion;
  SuiteConfig config;
  std::vector<CaseResult> cases;
  int passed = 0;
  int failed = 0;
  int guard_trips = 0;
};

/// Runs the named verification suite. Deterministic: the same config always
/// produces the same report. Resource-guard trips are recorded per case and
/// never abort the run; an unknown suite name throws ShapeError.
SuiteReport run_suite(const SuiteConfig& cfg);

json describe(const SuiteConfig& cfg);
json describe(const SuiteReport& rep);

}  // namespace folkcat
