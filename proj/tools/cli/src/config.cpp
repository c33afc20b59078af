#include "allee/cli/config.hpp"

#include <fstream>

#include "allee/error.hpp"

namespace allee::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    std::string key = eq == std::string::npos ? "" : trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    if (key.empty()) {
      throw Error(ErrorCode::InvalidArgument, path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    if (!out.emplace(key, trim(line.substr(eq + 1))).second) {
      throw Error(ErrorCode::InvalidArgument, path + ":" + std::to_string(lineno) + ": repeated key '" + key + "'");
    }
  }
  return out;
}

}  // namespace allee::cli
