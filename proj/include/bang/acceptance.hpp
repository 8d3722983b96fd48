#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bang {

struct CriterionResult {
  int id;
  std::string title;
  bool passed;
  std::string detail;
};

struct AcceptanceConfig {
  std::uint64_t seed = 1;
};

// Runs the end-to-end acceptance criteria on the built-in fixtures and on
// generated corpora. Results are ordered by criterion id.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& config = {});

}  // namespace bang
