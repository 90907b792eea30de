#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "tubepack/io_format.hpp"

inline std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::string data_file(const std::string& name) {
  return std::string(TUBEPACK_TEST_DATA) + "/" + name;
}

inline tubepack::InstanceDoc sample_instance() {
  return tubepack::parse_instance(slurp_file(data_file("sample_order.txt")));
}
