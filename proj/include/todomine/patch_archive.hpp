#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "todomine/commit.hpp"

namespace todomine {

// On-disk layout: one "<index>_<commit_id>.patch" file per commit,
//
//   commit: <hex-id>
//   timestamp: <integer>
//   message-begin
//   <raw message lines>
//   message-end
//   <raw unified diff to end of file>
//
// The writer terminates the message with one '\n' before "message-end"; the
// reader strips exactly that one, so messages round-trip byte for byte.

std::string format_archive_entry(const CommitRecord& record);

// `file_name` is only used for error messages.
CommitRecord parse_archive_entry(std::string_view contents,
                                 const std::string& file_name,
                                 const std::string& repo);

// Records come back in history order; repo is the directory's name.
std::vector<CommitRecord> read_patch_archive(
    const std::filesystem::path& directory);

// Creates the directory if needed. Entries are numbered in the given order.
void write_patch_archive(const std::filesystem::path& directory,
                         std::span<const CommitRecord> records);

bool looks_like_patch_archive(const std::filesystem::path& directory);

}  // namespace todomine
