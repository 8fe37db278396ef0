#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "scenario.hpp"

namespace crossmetric::runner {

struct CheckInfo {
  std::string name;
  /// The inequality or identity the check verifies.
  std::string reference;
};

const std::vector<CheckInfo>& check_table();
const CheckInfo* find_check(const std::string& name);

struct Artifact {
  std::string filename;
  std::string contents;
};

struct CheckOutcome {
  std::string name;
  bool pass = false;
  nlohmann::json report;
  std::vector<Artifact> artifacts;
};

/// Runs one check. Randomness is seeded from the scenario seed and the
/// check's position in check_table(), so results do not depend on order.
CheckOutcome run_check(const std::string& name, const Scenario& scenario);

}  // namespace crossmetric::runner
