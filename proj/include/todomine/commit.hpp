#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace todomine {

enum class Language { kPython, kJava };

std::string_view to_string(Language lang);
// Throws Error for anything other than "python" / "java".
Language parse_language(std::string_view s);

struct RepoSource {
  std::string path;  // local path; remote URLs are not cloned
  Language language = Language::kPython;
  std::uint64_t star_rank = 0;

  friend bool operator==(const RepoSource&, const RepoSource&) = default;
};

// One line per repository: "<star_rank> <language> <path>", where the path
// is the remainder of the line. Blank lines and '#' comments are ignored.
// Relative paths resolve against the list file's directory.
std::vector<RepoSource> read_repo_list(const std::filesystem::path& file);

struct CommitRecord {
  std::string repo;
  std::string commit_id;
  std::int64_t timestamp = 0;
  std::string message;
  std::string diff_text;
  std::size_t diff_bytes = 0;

  friend bool operator==(const CommitRecord&, const CommitRecord&) = default;
};

CommitRecord make_commit_record(std::string repo, std::string_view commit_id,
                                std::int64_t timestamp, std::string message,
                                std::string diff_text);

// Lowercases and validates a 7..40 character hex id; throws Error otherwise.
std::string canonical_commit_id(std::string_view id);

// Repository identifier used in records: the last path component.
std::string repo_id_for(const std::filesystem::path& path);

// History order: oldest first, ties by commit id.
void sort_history(std::vector<CommitRecord>& commits);

bool is_todo_related(std::string_view diff_text);

struct IngestOptions {
  // Abort on the first unreadable commit instead of skipping it.
  bool strict = false;
};

enum class SourceKind { kGit, kPatchArchive };

// Throws SourceNotFound / NotAGitRepository.
SourceKind detect_source_kind(const std::filesystem::path& path);

// Every commit of a git repository or patch archive in history order.
std::vector<CommitRecord> list_commits(const RepoSource& source,
                                       const IngestOptions& options = {});

}  // namespace todomine
