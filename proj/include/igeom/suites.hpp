#pragma once

#include <string>
#include <vector>

#include "igeom/report.hpp"

namespace ig {

struct SuiteConfig {
  std::string suite;  // constants | parseval | wedge | dualwedge | vk |
                      // petkantschin | membership | structure
  std::vector<int> n_list;  // empty -> per-suite defaults
  std::vector<int> k_list;
  int L = 8;
  long samples = 100000;
  std::uint64_t seed = 42;
  double tol = -1.0;  // overrides the per-check default when > 0
  bool deep = false;  // enables the expensive membership witness checks
};

/// Dispatches a named verification suite and aggregates its check records.
/// Unknown suite names throw std::invalid_argument.
VerificationReport run_suite(const SuiteConfig& cfg);

}  // namespace ig
