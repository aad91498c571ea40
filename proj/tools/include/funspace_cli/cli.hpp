#pragma once

#include <cstdint>
#include <iosfwd>

#include <json.hpp>

namespace funspace::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kResolution = 3, kInconclusive = 4 };

/// Runs one command line; reports go to `out` (or --output), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct SelftestOutcome {
  nlohmann::json report;
  bool all_pass = false;
};

/// The invariant battery behind `funspace selftest`. Deterministic in `seed`.
SelftestOutcome run_selftest(std::uint64_t seed);

}  // namespace funspace::cli
