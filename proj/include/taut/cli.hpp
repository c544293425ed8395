#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace taut {

inline constexpr int kExitPass = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitInvalidInput = 2;

/// Entry point for the `taut` executable. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "2,1" into parts and "2,1;3" into one part list per component.
std::vector<int> parse_int_list(const std::string& text);
std::vector<std::vector<int>> parse_component_lists(const std::string& text);

} // namespace taut
