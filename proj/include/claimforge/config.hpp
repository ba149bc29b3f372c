#pragma once

#include <map>
#include <string>

namespace claimforge {

/// Flat UTF-8 key=value file: one pair per line, '#' comments and blank
/// lines ignored, whitespace around key and value trimmed. Every key is
/// overridable by the same-named command-line flag.
std::map<std::string, std::string> load_flat_config(const std::string& path);

}  // namespace claimforge
