#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "twistkit/io.hpp"

namespace twistkit {

struct FixtureInfo {
  std::string name;
  std::string file;  // file name under fixtures/
};

const std::vector<FixtureInfo>& fixture_list();
/// Throws FormatError for an unknown name.
Built fixture(const std::string& name);

/// Reattaches the cyclic structure of a power-basis extension F_p[t]/(m) read
/// from a file, so that biconditional checks stay available.
Built recover_structure(Algebra a);

/// Names of the library operations a scenario can exercise.
const std::vector<std::string>& library_operations();

struct ScenarioOutcome {
  json report;
  /// 0 pass, 1 failed expectation.
  int exit_code = 0;
};

/// Runs the steps of a scenario document in order. Relative "file" members are
/// resolved against `base`. Malformed scenarios raise FormatError; a step
/// that fails mathematically raises MathError unless it declares
/// "expect_error".
ScenarioOutcome run_scenario(const json& scenario, std::uint64_t seed, const std::filesystem::path& base = {});

/// Deterministic text form used for every emitted report.
std::string dump(const json& j);

}  // namespace twistkit
