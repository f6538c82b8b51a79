#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace boundinfo::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  std::string expected;
  std::string observed;
  bool pass = false;
};

/// Runs the full acceptance suite. `tolerance` applies to the numerical
/// (quantum) criteria; the classical criteria are exact. `seed` drives the
/// randomized property suite.
std::vector<CriterionResult> run_acceptance(double tolerance = 1e-9,
                                            std::uint64_t seed = 0);

}  // namespace boundinfo::verify
