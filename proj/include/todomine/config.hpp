#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "todomine/commit.hpp"
#include "todomine/normalize.hpp"

namespace todomine {

struct PipelineConfig {
  std::filesystem::path repo_list_path;
  // Restricts the run to one language; unset means every listed repo.
  std::optional<Language> language;
  std::filesystem::path output_dir;
  std::uint64_t seed = 0;
  std::size_t worker_count = 1;
  // Abort a repository on its first unreadable commit.
  bool strict_ingest = false;
  // Parse diffs in strict mode; a malformed hunk then fails the repository.
  bool strict_diff = false;
  NormalizationConfig normalize;
  bool dedup = false;
  bool resume = false;
};

// Reads an INI-style file:
//
//   [pipeline]
//   repo_list = repos.txt
//   language = python
//   output_dir = out
//   seed = 42
//   workers = 4
//   strict = false
//   dedup = false
//
//   [normalize]
//   commit_id_pattern = ...
//   issue_id_pattern = ...
//   commit_placeholder = <commit_id>
//   issue_placeholder = <issue_id>
//   max_diff_bytes = 1048576
//
// Relative paths resolve against the config file's directory. Unknown
// sections or keys are a ConfigError.
PipelineConfig load_config(const std::filesystem::path& file);

// Throws ConfigError. Pattern problems surface here rather than mid-run.
void validate(const PipelineConfig& config);

// SHA-256 over every setting that can change the outputs plus the repo
// list's bytes. Worker count, output location and resume do not count.
std::string config_digest(const PipelineConfig& config);

}  // namespace todomine
