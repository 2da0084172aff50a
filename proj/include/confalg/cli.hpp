#pragma once

// Command-line front end: translate, check, variety, artin, export, list.
//
// Exit codes: 0 pass/agree, 1 fail, 2 pseudo/coefficient disagreement,
// 3 bad input (usage, parse, file or validation errors).

#include <iosfwd>
#include <string>
#include <vector>

namespace confalg {

inline constexpr unsigned kMaxWindow = 16;
inline constexpr unsigned kMaxCutoff = 8;
inline constexpr int kExitInputError = 3;

/// Default output format comes from this variable when --format is absent.
inline constexpr const char* kFormatEnv = "CONFALG_FORMAT";

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace confalg
