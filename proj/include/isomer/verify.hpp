#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "isomer/sampler.hpp"

namespace isomer {

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t random_states = 10000;
  bool run_pipeline = true;
  SamplerConfig pipeline;  // target_isomers is filled from the oracle
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Cross-checks the QUBO identities, the oracles, decoding and (optionally)
/// the sampling pipeline for C_n. Checks that do not apply at this n are
/// omitted.
std::vector<CheckResult> run_verification(int carbons, const VerifyOptions& options = {});

/// Prints one "[PASS]"/"[FAIL]" line per check; returns true when all pass.
bool print_checks(const std::vector<CheckResult>& checks, std::ostream& out);

/// Alkane structural isomer counts for 1..12 carbons.
std::size_t known_alkane_isomer_count(int carbons);

}  // namespace isomer
