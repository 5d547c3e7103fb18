#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fatou/rational_map.hpp"

namespace fatou {

struct VerifyCheck {
  std::string group;
  std::string name;
  bool passed = false;
  std::string measured;
  std::string tolerance;
};

struct VerifyConfig {
  /// Groups to run; empty means all of portrait, periodic, rays, lifting,
  /// catalog, basins.
  std::vector<std::string> only;
  /// Replaces the written-out cubic (z^3 - 3z + 2)/(1.5z - 1) in the family
  /// identity check.
  std::optional<RationalMap> cubic_reference;
  /// Replaces the written-out quartic in the family identity check.
  std::optional<RationalMap> quartic_reference;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_passed() const;
};

std::vector<std::string> verify_groups();

/// Runs the checks of the selected groups on the catalog maps.  A check
/// that throws is recorded as failed with the error text as its measurement;
/// the remaining checks still run.  Throws InvalidArgument for an unknown
/// group name.
VerifyReport verify_suite(const VerifyConfig& config = {});

/// One line per check: "PASS|FAIL group/name measured=... tolerance=...".
void print_report(const VerifyReport& report, std::ostream& out);

}  // namespace fatou
