#pragma once

#include "disk_squeeze/geometry.hpp"
#include "disk_squeeze/serialize.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace disk_squeeze::cli {

inline constexpr const char* kSchema = "disk-squeeze/1";

enum ExitCode : int {
    kSuccess = 0,
    kCheckFailed = 1,  // verification failure or infeasible control target
    kUsageError = 2,   // bad flags, malformed literals, domain errors
};

// Accepts a+bi, a-bi, a and bi with a, b decimal reals and no whitespace.
std::optional<Complex> parse_complex(std::string_view text);

// Seed used when --seed is absent: DISK_SQUEEZE_SEED if set and valid, else 1.
std::uint64_t default_seed();

// Runs one command line (args excludes the program name). Reports go to `out`
// unless --out is given, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Unit disk drawing of a report produced by trajectory, reachable or
// adiabatic; the report itself is embedded as a comment.
std::string render_svg(const Json& report);

}  // namespace disk_squeeze::cli
