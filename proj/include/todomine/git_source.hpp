#pragma once

#include <filesystem>
#include <vector>

#include "todomine/commit.hpp"

namespace todomine {

// Enumerates all commits reachable from any ref by shelling out to git. Each
// record carries the patch against its first parent (root commits against the
// empty tree). Binary changes appear only as git's "Binary files" line.
std::vector<CommitRecord> list_git_commits(const std::filesystem::path& repo,
                                           const IngestOptions& options = {});

bool looks_like_git_repository(const std::filesystem::path& path);

}  // namespace todomine
