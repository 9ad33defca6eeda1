#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace todomine {

struct ProcessResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs argv[0] (looked up on PATH) with no shell in between and collects both
// output streams. Throws Error only when the process cannot be started.
ProcessResult run_process(const std::vector<std::string>& argv,
                          const std::filesystem::path& cwd = {});

}  // namespace todomine
