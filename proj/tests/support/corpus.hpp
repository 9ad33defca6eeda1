#pragma once

// Synthetic fixture repositories with hand-written expectations, written out
// as patch archives.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "todomine/commit.hpp"

namespace todomine::testing {

enum class Expect {
  kNotTodo,
  kPositive,
  kNegative,
  kDiscard,
  kMulti,
  kNoTodo,
  kOversized,
  kEmptyMessage,
  kMalformed,
};

struct AnnotatedCommit {
  std::string message;
  std::string diff;
  Expect expect = Expect::kNotTodo;
  // Only for kPositive / kNegative.
  std::string todo_comment;
  std::string commit_msg;
};

struct AnnotatedRepo {
  std::string name;
  Language language = Language::kPython;
  std::uint64_t star_rank = 0;
  std::vector<AnnotatedCommit> commits;
};

// "diff --git" section for one file. Hunk headers are computed from the body
// lines, which carry their marker.
std::string file_diff(const std::string& path,
                      const std::vector<std::vector<std::string>>& hunks,
                      const std::vector<std::string>& extra_headers = {});

// 40-hex commit id for the i-th commit of the repo with the given rank.
std::string fixture_commit_id(std::uint64_t rank, std::size_t i);

// Three repositories (two Python, one Java), 64 commits in all.
std::vector<AnnotatedRepo> annotated_corpus();

// Writes each repo as <root>/<name> and a repo list at <root>/repos.txt.
// Returns the repo list path.
std::filesystem::path write_corpus(const std::filesystem::path& root,
                                   const std::vector<AnnotatedRepo>& repos);

}  // namespace todomine::testing
