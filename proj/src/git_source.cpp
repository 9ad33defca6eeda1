#include "todomine/git_source.hpp"

#include <charconv>

#include <spdlog/spdlog.h>

#include "todomine/errors.hpp"
#include "todomine/process.hpp"
#include "todomine/text.hpp"

namespace todomine {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> git_args(const fs::path& repo,
                                  std::initializer_list<std::string> rest) {
  std::vector<std::string> args{"git", "-C", repo.string(), "-c",
                                "core.quotepath=off"};
  args.insert(args.end(), rest);
  return args;
}

struct LogEntry {
  std::string id;
  std::string first_parent;
  std::int64_t timestamp = 0;
  std::string message;
};

std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    parts.push_back(s.substr(pos, next == std::string_view::npos
                                      ? std::string_view::npos
                                      : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

std::vector<LogEntry> read_log(const fs::path& repo) {
  const auto res = run_process(git_args(
      repo, {"log", "--all", "--no-color", "-z",
             "--format=%H%x1f%P%x1f%ct%x1f%B"}));
  if (res.exit_code != 0) {
    throw NotAGitRepository(repo.string() + " (" +
                            std::string(trim(res.err)) + ")");
  }

  std::vector<LogEntry> entries;
  for (const auto record : split_on(res.out, '\0')) {
    if (record.empty()) continue;
    const auto fields = split_on(record, '\x1f');
    if (fields.size() < 4) {
      throw Error("unexpected git log record in " + repo.string());
    }
    LogEntry e;
    e.id = std::string(fields[0]);
    const auto parents = fields[1];
    e.first_parent = std::string(parents.substr(0, parents.find(' ')));
    const auto ts = fields[2];
    std::from_chars(ts.data(), ts.data() + ts.size(), e.timestamp);
    // A message containing the separator byte is rejoined verbatim.
    std::string msg(fields[3]);
    for (std::size_t i = 4; i < fields.size(); ++i) {
      msg += '\x1f';
      msg += fields[i];
    }
    e.message = std::move(msg);
    entries.push_back(std::move(e));
  }
  return entries;
}

std::string first_parent_diff(const fs::path& repo, const LogEntry& e) {
  std::vector<std::string> args =
      git_args(repo, {"diff-tree", "-p", "-M", "--no-color", "--no-ext-diff",
                      "--no-textconv", "--no-commit-id"});
  if (e.first_parent.empty()) {
    args.push_back("--root");
    args.push_back(e.id);
  } else {
    args.push_back(e.first_parent);
    args.push_back(e.id);
  }
  auto res = run_process(args);
  if (res.exit_code != 0) {
    throw UnreadableCommit(e.id, std::string(trim(res.err)));
  }
  return std::move(res.out);
}

}  // namespace

bool looks_like_git_repository(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_directory(path, ec)) return false;
  if (fs::exists(path / ".git", ec)) return true;
  // bare repository
  return fs::is_regular_file(path / "HEAD", ec) &&
         fs::is_directory(path / "objects", ec) &&
         fs::is_directory(path / "refs", ec);
}

std::vector<CommitRecord> list_git_commits(const fs::path& repo,
                                           const IngestOptions& options) {
  std::error_code ec;
  if (!fs::exists(repo, ec)) throw SourceNotFound(repo.string());
  if (!looks_like_git_repository(repo)) throw NotAGitRepository(repo.string());

  const std::string repo_name = repo_id_for(repo);
  std::vector<CommitRecord> commits;
  for (const auto& entry : read_log(repo)) {
    try {
      commits.push_back(make_commit_record(repo_name, entry.id,
                                           entry.timestamp, entry.message,
                                           first_parent_diff(repo, entry)));
    } catch (const UnreadableCommit& err) {
      if (options.strict) throw;
      spdlog::warn("{}: skipping {}", repo_name, err.what());
    }
  }
  sort_history(commits);
  return commits;
}

}  // namespace todomine
