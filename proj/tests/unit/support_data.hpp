#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace testdata {

inline std::string read(const std::string& name) {
  std::ifstream f(std::string(EXPCUT_DATA_DIR) + "/" + name);
  if (!f) throw std::runtime_error("missing data file " + name);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace testdata
