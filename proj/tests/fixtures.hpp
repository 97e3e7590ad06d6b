#pragma once

#include <cstdlib>
#include <filesystem>
#include <string>

#include "dani/synth.hpp"

namespace fixtures {

struct Corpus {
  std::filesystem::path dir;
  bool synthetic = true;
};

inline bool has_task_files(const std::filesystem::path& dir) {
  for (const auto& sub : {dir, dir / "en", dir / "tasks_1-20_v1-2" / "en"}) {
    if (std::filesystem::exists(sub / "qa19_path-finding_train.txt")) return true;
  }
  return false;
}

// $DANI_DATA_DIR when it holds the real task files, else the generated
// corpus in the build tree (written by the corpus_setup test fixture).
inline Corpus corpus() {
  if (const char* env = std::getenv("DANI_DATA_DIR"); env && *env && has_task_files(env)) {
    return {env, false};
  }
  static const std::filesystem::path dir = [] {
    std::filesystem::path d = DANI_TEST_CORPUS_DIR;
    if (!std::filesystem::exists(d / "SYNTHETIC")) dani::synthesize_corpus(d);
    return d;
  }();
  return {dir, true};
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() / ("dani_" + name);
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace fixtures
