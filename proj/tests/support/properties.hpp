// Randomised property suites.  Run standalone by senescent_properties and as
// one criterion of the acceptance binary.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace senescent::testing {

struct PropertyReport {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

std::vector<PropertyReport> run_property_suites(std::uint64_t seed);

}  // namespace senescent::testing
