#include "todomine/commit.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "todomine/errors.hpp"
#include "todomine/git_source.hpp"
#include "todomine/patch_archive.hpp"
#include "todomine/text.hpp"

namespace todomine {

namespace fs = std::filesystem;

std::string_view to_string(Language lang) {
  switch (lang) {
    case Language::kPython:
      return "python";
    case Language::kJava:
      return "java";
  }
  return "?";
}

Language parse_language(std::string_view s) {
  if (s == "python") return Language::kPython;
  if (s == "java") return Language::kJava;
  throw Error("unsupported language '" + std::string(s) +
              "' (expected python or java)");
}

std::vector<RepoSource> read_repo_list(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read repo list " + file.string());

  std::vector<RepoSource> sources;
  std::set<std::uint64_t> ranks;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;

    std::istringstream fields{std::string(body)};
    std::string rank_text, lang_text;
    fields >> rank_text >> lang_text;
    std::string rest;
    std::getline(fields, rest);
    const auto path = trim(rest);

    const std::string where =
        file.string() + ":" + std::to_string(line_no) + ": ";
    RepoSource src;
    const auto [ptr, ec] = std::from_chars(
        rank_text.data(), rank_text.data() + rank_text.size(), src.star_rank);
    if (ec != std::errc() || ptr != rank_text.data() + rank_text.size()) {
      throw ConfigError(where + "bad star rank '" + rank_text + "'");
    }
    try {
      src.language = parse_language(lang_text);
    } catch (const Error& e) {
      throw ConfigError(where + e.what());
    }
    if (path.empty()) throw ConfigError(where + "missing repository path");
    if (!ranks.insert(src.star_rank).second) {
      throw ConfigError(where + "duplicate star rank " + rank_text);
    }
    fs::path p{std::string(path)};
    if (p.is_relative()) p = file.parent_path() / p;
    src.path = p.lexically_normal().string();
    sources.push_back(std::move(src));
  }
  return sources;
}

std::string canonical_commit_id(std::string_view id) {
  std::string out = to_lower_ascii(trim(id));
  const bool hex = std::all_of(out.begin(), out.end(), [](char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
  });
  if (out.size() < 7 || out.size() > 40 || !hex) {
    throw Error("invalid commit id '" + std::string(id) + "'");
  }
  return out;
}

CommitRecord make_commit_record(std::string repo, std::string_view commit_id,
                                std::int64_t timestamp, std::string message,
                                std::string diff_text) {
  CommitRecord r;
  r.repo = std::move(repo);
  r.commit_id = canonical_commit_id(commit_id);
  r.timestamp = timestamp;
  r.message = std::move(message);
  r.diff_bytes = diff_text.size();
  r.diff_text = std::move(diff_text);
  return r;
}

std::string repo_id_for(const fs::path& path) {
  auto p = path.lexically_normal();
  if (!p.has_filename()) p = p.parent_path();
  auto name = p.filename().string();
  return name.empty() ? path.string() : name;
}

void sort_history(std::vector<CommitRecord>& commits) {
  std::stable_sort(commits.begin(), commits.end(),
                   [](const CommitRecord& a, const CommitRecord& b) {
                     if (a.timestamp != b.timestamp)
                       return a.timestamp < b.timestamp;
                     return a.commit_id < b.commit_id;
                   });
}

bool is_todo_related(std::string_view diff_text) {
  return contains_todo_token(diff_text);
}

SourceKind detect_source_kind(const fs::path& path) {
  std::error_code ec;
  if (!fs::exists(path, ec)) throw SourceNotFound(path.string());
  if (looks_like_git_repository(path)) return SourceKind::kGit;
  if (looks_like_patch_archive(path)) return SourceKind::kPatchArchive;
  throw NotAGitRepository(path.string());
}

std::vector<CommitRecord> list_commits(const RepoSource& source,
                                       const IngestOptions& options) {
  const fs::path path{source.path};
  switch (detect_source_kind(path)) {
    case SourceKind::kGit:
      return list_git_commits(path, options);
    case SourceKind::kPatchArchive:
      return read_patch_archive(path);
  }
  return {};
}

}  // namespace todomine
