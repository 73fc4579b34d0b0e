#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cartan {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

/// Runs one command (`analyze`, `render`, `verify` or `critical`); `args`
/// excludes the program name. Returns the process exit code: 0 on success
/// (or a Cartan/NotCartan verdict), 2 for Undetermined, 1 on any error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cartan
