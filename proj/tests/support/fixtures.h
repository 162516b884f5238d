#pragma once

#include <filesystem>
#include <string>

#include "vixsel/design_space.h"

namespace vixsel::testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(VIXSEL_FIXTURE_DIR) / name;
}

// The eight-query workload over the fixed seven views and twelve indexes.
DesignSpace fixture_space(bool scaled = false);

}  // namespace vixsel::testing
