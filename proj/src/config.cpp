#include "claimforge/config.hpp"

#include <fstream>
#include <stdexcept>

namespace claimforge {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::map<std::string, std::string> load_flat_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::map<std::string, std::string> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                               ": expected key=value");
    }
    std::string key = trim(stripped.substr(0, eq));
    if (key.empty()) {
      throw std::runtime_error(path + ": line " + std::to_string(line_no) + ": empty key");
    }
    out[key] = trim(stripped.substr(eq + 1));
  }
  return out;
}

}  // namespace claimforge
