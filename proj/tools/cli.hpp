#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blobshift::cli {

inline constexpr const char *kToolName = "blobshift";
inline constexpr const char *kVersion = "0.1.0";

// Runs one command line (without the program name). Reports and renders go
// to `out`, diagnostics to `err`. Exit codes: 0 success, 1 usage error,
// 2 domain error.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// FNV-1a 64-bit, printed as 16 hex digits.
std::string fnv1a_hex(const std::string &data);

} // namespace blobshift::cli
