#pragma once

#include <string>

#include "coarsekit/json_io.hpp"

namespace coarsekit::cli {

/// Runs one command on normalized inputs and returns its result object.
/// Inputs are exactly what a report echoes, so a report can be replayed.
Json run_command(const std::string& command, const Json& inputs);

/// {command, inputs, result}.
Json make_report(const std::string& command, const Json& inputs, const Json& result);

/// Replays a report and re-checks any certificate it carries.
Json verify_report(const Json& report);

/// Independent check of a paradox certificate or Hall violation, in bare
/// form or wrapped in a report, against the window described by `family`.
Json verify_paradox_claim(const Json& family, const Json& claim);

/// Human-readable "path: value" lines for --pretty.
std::string pretty(const Json& j);

}  // namespace coarsekit::cli
