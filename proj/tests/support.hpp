#pragma once

#include "modcat/modcat.hpp"

#include <gtest/gtest.h>

namespace modcat::testing {

inline std::filesystem::path data_dir() { return MODCAT_DATA_DIR; }

inline std::shared_ptr<const CategoryData> bundled_data(const std::string& name) {
  return std::make_shared<const CategoryData>(bundled::by_name(name));
}

inline const std::vector<std::string>& modular_names() {
  static const std::vector<std::string> n = {"vec", "fibonacci", "ising", "semion", "z3"};
  return n;
}

inline double phi() { return (1.0 + std::sqrt(5.0)) / 2.0; }

}  // namespace modcat::testing
