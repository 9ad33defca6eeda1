#include "todomine/patch_archive.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <regex>
#include <set>
#include <sstream>

#include "todomine/errors.hpp"

namespace todomine {

namespace fs = std::filesystem;

namespace {

const std::regex& entry_name_pattern() {
  static const std::regex re(R"(^([0-9]+)_([0-9A-Fa-f]{7,40})\.patch$)");
  return re;
}

bool is_hidden(const fs::path& p) {
  const auto name = p.filename().string();
  return !name.empty() && name.front() == '.';
}

// Reads one "<key>: <value>\n" header line starting at `pos`.
std::string_view header_value(std::string_view contents, std::size_t& pos,
                              std::string_view key, const std::string& file) {
  const auto nl = contents.find('\n', pos);
  if (nl == std::string_view::npos) {
    throw MalformedArchiveEntry(file, "truncated before '" +
                                          std::string(key) + "' line");
  }
  const auto line = contents.substr(pos, nl - pos);
  const std::string prefix = std::string(key) + ": ";
  if (line.substr(0, prefix.size()) != prefix) {
    throw MalformedArchiveEntry(file, "expected '" + prefix + "...' line");
  }
  pos = nl + 1;
  return line.substr(prefix.size());
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoFailure("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

}  // namespace

std::string format_archive_entry(const CommitRecord& record) {
  std::string out;
  out.reserve(record.diff_text.size() + record.message.size() + 96);
  out += "commit: " + record.commit_id + "\n";
  out += "timestamp: " + std::to_string(record.timestamp) + "\n";
  out += "message-begin\n";
  out += record.message;
  out += "\nmessage-end\n";
  out += record.diff_text;
  return out;
}

CommitRecord parse_archive_entry(std::string_view contents,
                                 const std::string& file_name,
                                 const std::string& repo) {
  std::size_t pos = 0;
  const auto id = header_value(contents, pos, "commit", file_name);
  const auto ts_text = header_value(contents, pos, "timestamp", file_name);

  std::int64_t ts = 0;
  const auto [ptr, ec] =
      std::from_chars(ts_text.data(), ts_text.data() + ts_text.size(), ts);
  if (ec != std::errc() || ptr != ts_text.data() + ts_text.size()) {
    throw MalformedArchiveEntry(file_name,
                                "bad timestamp '" + std::string(ts_text) + "'");
  }

  constexpr std::string_view kBegin = "message-begin\n";
  if (contents.substr(pos, kBegin.size()) != kBegin) {
    throw MalformedArchiveEntry(file_name, "expected 'message-begin' line");
  }
  const std::size_t msg_start = pos + kBegin.size();

  // A line reading exactly "message-end" can never occur in a unified diff,
  // so the last one terminates the message.
  constexpr std::string_view kEnd = "\nmessage-end\n";
  const auto end = contents.rfind(kEnd);
  if (end == std::string_view::npos || end + 1 < msg_start) {
    const bool unterminated = contents.ends_with("\nmessage-end");
    throw MalformedArchiveEntry(
        file_name, unterminated ? "missing diff section after 'message-end'"
                                : "missing 'message-end' line");
  }
  std::string message =
      end < msg_start ? std::string()
                      : std::string(contents.substr(msg_start, end - msg_start));
  std::string diff(contents.substr(end + kEnd.size()));

  try {
    return make_commit_record(repo, id, ts, std::move(message),
                              std::move(diff));
  } catch (const MalformedArchiveEntry&) {
    throw;
  } catch (const Error& e) {
    throw MalformedArchiveEntry(file_name, e.what());
  }
}

bool looks_like_patch_archive(const fs::path& directory) {
  std::error_code ec;
  if (!fs::is_directory(directory, ec)) return false;
  for (const auto& entry : fs::directory_iterator(directory, ec)) {
    if (is_hidden(entry.path())) continue;
    if (!entry.is_regular_file()) return false;
    if (!std::regex_match(entry.path().filename().string(),
                          entry_name_pattern())) {
      return false;
    }
  }
  return !ec;
}

std::vector<CommitRecord> read_patch_archive(const fs::path& directory) {
  std::error_code ec;
  if (!fs::exists(directory, ec)) throw SourceNotFound(directory.string());
  if (!fs::is_directory(directory, ec)) {
    throw NotAGitRepository(directory.string());
  }

  struct Entry {
    std::uint64_t index;
    fs::path path;
  };
  std::vector<Entry> entries;
  for (const auto& de : fs::directory_iterator(directory)) {
    if (is_hidden(de.path())) continue;
    const auto name = de.path().filename().string();
    std::smatch m;
    if (!de.is_regular_file() ||
        !std::regex_match(name, m, entry_name_pattern())) {
      throw MalformedArchiveEntry(name, "not a <index>_<commit_id>.patch file");
    }
    std::uint64_t index = 0;
    const auto idx = m[1].str();
    std::from_chars(idx.data(), idx.data() + idx.size(), index);
    entries.push_back({index, de.path()});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.index != b.index ? a.index < b.index : a.path < b.path;
  });

  const std::string repo = repo_id_for(directory);
  std::vector<CommitRecord> records;
  std::set<std::string> seen;
  for (const auto& e : entries) {
    const auto name = e.path.filename().string();
    auto record = parse_archive_entry(read_file(e.path), name, repo);
    const auto name_id = name.substr(name.find('_') + 1,
                                     name.size() - name.find('_') - 7);
    if (canonical_commit_id(name_id) != record.commit_id) {
      throw MalformedArchiveEntry(name, "file name disagrees with commit line");
    }
    if (!seen.insert(record.commit_id).second) {
      throw DuplicateCommitId(record.commit_id);
    }
    records.push_back(std::move(record));
  }
  sort_history(records);
  return records;
}

void write_patch_archive(const fs::path& directory,
                         std::span<const CommitRecord> records) {
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) {
    throw IoFailure("cannot create " + directory.string() + ": " +
                    ec.message());
  }
  const std::size_t width =
      std::max<std::size_t>(6, std::to_string(records.size()).size());
  std::size_t index = 0;
  for (const auto& r : records) {
    std::ostringstream name;
    name << std::setw(static_cast<int>(width)) << std::setfill('0') << index++
         << '_' << r.commit_id << ".patch";
    const auto path = directory / name.str();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    const auto text = format_archive_entry(r);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw IoFailure("cannot write " + path.string());
  }
}

}  // namespace todomine
