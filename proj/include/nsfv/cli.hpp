#pragma once

#include <iosfwd>

#include "nsfv/config.hpp"

namespace nsfv::cli {

/// Dispatches a validated configuration and writes its CSV/field artifacts
/// into cfg.out_dir. Returns the process exit code: 0 success, 2 validation
/// or environment failure, 3 solver failure, 4 invariant violation. All
/// outputs are deterministic for a fixed config and seed.
int execute(const RunConfig& cfg, std::ostream& log);

}  // namespace nsfv::cli
