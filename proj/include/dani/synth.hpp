#pragma once

// Deterministic generator for corpora in the bAbI file format, following
// the per-task sentence templates. Used when the real corpus cannot be
// downloaded; answers come from an explicit world simulation, not from the
// reasoning code under test.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "dani/corpus.hpp"

namespace dani {

struct SynthOptions {
  std::uint64_t seed = 1;
  std::size_t questions_per_split = 1000;
};

/// "qa1_single-supporting-fact" etc.
std::string_view task_file_stem(int task_id);

/// Full file contents for one task split.
std::string synthesize_task(int task_id, Split split, const SynthOptions& options = {});

/// Writes qa<N>_<name>_{train,test}.txt for tasks 1-20 plus a SYNTHETIC
/// marker file into `dest`.
void synthesize_corpus(const std::filesystem::path& dest, const SynthOptions& options = {});

}  // namespace dani
