#pragma once
// Command-line front end: subcommand dispatch, flag/config parsing, and
// deterministic CSV/JSON emission of sweep tables.

#include <cstddef>
#include <string>
#include <vector>

#include "sshc/model.hpp"

namespace sshc::cli {

inline constexpr const char* kVersion = "1.0.0";

// "0.4pi", "pi", "-0.25pi", or plain radians; returns radians.
// Throws std::invalid_argument on anything else.
double parse_angle(const std::string& text);

// "none", "uniform:<g>", "staggered:<g>", "endpoints:<g>".
OnSitePotential parse_onsite(const std::string& text);

// Comma-separated integers with inclusive ranges: "10,12,20:24" ->
// {10, 12, 20, 21, 22, 23, 24}.
std::vector<std::size_t> parse_int_list(const std::string& text);

// Full program entry: parse argv, run the selected subcommand, write its
// table. Returns the process exit code (0 ok, 1 usage error, 2 numerical
// failure).
int run_cli(int argc, const char* const* argv);

}  // namespace sshc::cli
