#pragma once

// Command-line front end. run() is the whole program minus process setup, so
// tests can drive it with in-memory streams.
//
// Exit codes: 0 success, 1 a requested check failed, 2 usage or parse error,
// 3 physical-regime violation, 4 numerical non-convergence.

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zpe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRegime = 3;
inline constexpr int kExitNonConvergence = 4;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every key a config file may set.
const std::vector<std::string>& config_keys();

/// Flat "key = value" lines; '#' starts a comment. Throws UsageError on
/// malformed lines and unknown keys.
std::map<std::string, std::string> parse_config_text(std::string_view text);

/// "a:b:step" (inclusive of b up to rounding), "x,y,z", or a single value.
/// With lengths set, each number may carry an "nm" or "um" suffix (um = 1000 nm).
std::vector<double> parse_grid(std::string_view spec, bool lengths = false);

/// Single number, with the same suffix rules as parse_grid.
double parse_number(std::string_view text, bool length = false);

/// Scientific notation with 10 significant digits; "NaN" for NaN.
std::string format_number(double x);

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zpe::cli
