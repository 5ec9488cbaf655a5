#pragma once

// The default module tree plus the contributed nonparametric module.

#include <filesystem>
#include <fstream>
#include <sstream>

#include "statbench/registry.hpp"

namespace fixtures {

inline const std::filesystem::path& source_dir() {
  static const std::filesystem::path p = STATBENCH_SOURCE_DIR;
  return p;
}

inline statbench::registry::Registry all_modules() {
  using namespace statbench::registry;
  auto base = discover(source_dir() / "modules").modules();
  std::ifstream in(source_dir() / "contrib/modules/inference/nonparametric/manifest.json");
  std::stringstream ss;
  ss << in.rdbuf();
  base.push_back(load_manifest(ss.str()));
  return Registry(base);
}

}  // namespace fixtures
