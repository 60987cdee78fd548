// sig2d - self-check suite behind the `verify` subcommand

#ifndef SIG2D_VERIFY_HPP_
#define SIG2D_VERIFY_HPP_

#include <cstdint>

#include "sig2d/io.hpp"

namespace sig2d {

struct VerifyResult {
  std::vector<Verdict> verdicts;  // required checks and report-only findings
  nlohmann::json reports;         // seam/trapping/radical detail payloads

  int required_failures() const;
  nlohmann::json to_json() const;
};

// Runs every property check (determinant identities, connection and curvature
// cross-checks, null-curve ODE residuals, conservation drift, trapping,
// radical scans, condition checks, quotient seams). Deterministic for a fixed
// seed.
VerifyResult run_verification(std::uint64_t seed);

}  // namespace sig2d

#endif
