#pragma once

#include <map>
#include <string>

namespace allee::cli {

/// Flat `key = value` file. Blank lines and lines starting with '#' are
/// ignored; keys may be written with or without a leading "--". Throws
/// InvalidArgument on unreadable files, malformed lines or repeated keys.
std::map<std::string, std::string> read_config(const std::string& path);

}  // namespace allee::cli
