#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symcap/io.hpp"

namespace symcap {

struct RunConfig {
  double hbar = 1.0;
  double tol = 1e-9;
  std::uint64_t seed = 42;
  long samples = 1000000;
  std::string format = "json";
};

/// Throws Input unless hbar, tol and samples are positive and finite.
void validate(const RunConfig& config);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AcceptanceReport {
  std::vector<CriterionResult> criteria;
  bool passed() const;
  Json to_json(const RunConfig& config) const;
  /// One "PASS|FAIL <id> <name>: <detail>" line per criterion.
  std::string to_text() const;
};

/// Runs the eleven acceptance criteria. `only` restricts to one id (0 = all).
/// Any exception inside a criterion is reported as its failure.
AcceptanceReport run_acceptance(const RunConfig& config, int only = 0);

}  // namespace symcap
