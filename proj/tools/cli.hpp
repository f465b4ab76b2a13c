#pragma once

#include <iosfwd>
#include <string>

#include "topoprint/analysis.hpp"

namespace topoprint::cli {

/// Entry point for the `topoprint` executable. Returns 0 on success, 1 when
/// the pipeline or validation fails, 2 for usage and configuration errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Human-readable summary printed by `analyze`.
std::string format_report(const AnalysisBundle& bundle);

} // namespace topoprint::cli
