#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gravcat/dense_coding.hpp"
#include "gravcat/thermal.hpp"

namespace gravcat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs the gravcat-coding command line. args[0] is the program name.
/// Results go to `out` (or the --output file); error objects go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// JSON object for a capacity evaluation, schema_version 1.
std::string capacity_json(const GravcatParams& params, const CapacityReport& report,
                          std::string_view engine);

}  // namespace gravcat::cli
