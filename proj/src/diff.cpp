#include "todomine/diff.hpp"

#include <array>
#include <charconv>

#include "todomine/errors.hpp"
#include "todomine/text.hpp"

namespace todomine {

namespace {

constexpr std::array<std::string_view, 17> kHeaderPrefixes = {
    "diff --git",        "diff ",
    "index ",            "--- ",
    "+++ ",              "new file mode",
    "deleted file mode", "old mode",
    "new mode",          "similarity index",
    "dissimilarity index", "rename from",
    "rename to",         "copy from",
    "copy to",           "Binary files",
    "GIT binary patch",
};

constexpr std::string_view kNoNewline = "\\ No newline at end of file";

bool starts_with(std::string_view s, std::string_view p) {
  return s.substr(0, p.size()) == p;
}

bool parse_number(std::string_view s, std::uint32_t& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// "<start>[,<len>]"
bool parse_range(std::string_view s, std::uint32_t& start,
                 std::uint32_t& len) {
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) {
    len = 1;
    return parse_number(s, start);
  }
  return parse_number(s.substr(0, comma), start) &&
         parse_number(s.substr(comma + 1), len);
}

// "@@ -a[,b] +c[,d] @@[section]"
bool parse_hunk_header(std::string_view line, Hunk& h) {
  if (!starts_with(line, "@@ -")) return false;
  const auto old_end = line.find(' ', 4);
  if (old_end == std::string_view::npos) return false;
  if (!parse_range(line.substr(4, old_end - 4), h.old_start, h.old_len)) {
    return false;
  }
  if (line.substr(old_end, 2) != " +") return false;
  const auto new_begin = old_end + 2;
  const auto new_end = line.find(' ', new_begin);
  if (new_end == std::string_view::npos) return false;
  if (!parse_range(line.substr(new_begin, new_end - new_begin), h.new_start,
                   h.new_len)) {
    return false;
  }
  if (line.substr(new_end, 3) != " @@") return false;
  h.section = std::string(line.substr(new_end + 3));
  return true;
}

std::string strip_path_prefix(std::string_view p) {
  // GNU diff appends "\t<timestamp>".
  if (const auto tab = p.find('\t'); tab != std::string_view::npos) {
    p = p.substr(0, tab);
  }
  if (p == "/dev/null") return std::string(p);
  if (starts_with(p, "a/") || starts_with(p, "b/")) p.remove_prefix(2);
  return std::string(p);
}

void derive_paths(FileDiff& f) {
  for (const auto& h : f.header_lines) {
    std::string_view line = h;
    if (starts_with(line, "--- ")) {
      f.old_path = strip_path_prefix(line.substr(4));
    } else if (starts_with(line, "+++ ")) {
      f.new_path = strip_path_prefix(line.substr(4));
    } else if (starts_with(line, "rename from ") && f.old_path.empty()) {
      f.old_path = std::string(line.substr(12));
    } else if (starts_with(line, "rename to ") && f.new_path.empty()) {
      f.new_path = std::string(line.substr(10));
    }
  }
  if (!f.header_lines.empty() && (f.old_path.empty() || f.new_path.empty()) &&
      starts_with(f.header_lines.front(), "diff --git a/")) {
    const std::string_view rest =
        std::string_view(f.header_lines.front()).substr(13);
    const auto mid = rest.find(" b/");
    if (mid != std::string_view::npos) {
      if (f.old_path.empty()) f.old_path = std::string(rest.substr(0, mid));
      if (f.new_path.empty()) f.new_path = std::string(rest.substr(mid + 3));
    }
  }
}

void append_range(std::string& out, std::uint32_t start, std::uint32_t len) {
  out += std::to_string(start);
  if (len != 1) {
    out += ',';
    out += std::to_string(len);
  }
}

class Parser {
 public:
  Parser(std::string_view text, ParseMode mode,
         std::vector<std::string>* warnings)
      : mode_(mode), warnings_(warnings) {
    if (!is_valid_utf8(text)) {
      storage_ = sanitize_utf8(text);
      text = storage_;
      warn("invalid UTF-8 replaced with U+FFFD");
    }
    if (!text.empty() && text.back() != '\n') {
      warn("diff text does not end with a newline");
    }
    lines_ = split_lines(text);
  }

  UnifiedDiff run() {
    while (pos_ < lines_.size()) {
      const auto line = lines_[pos_];
      if (starts_with(line, "@@")) {
        parse_hunk();
      } else {
        parse_outside_hunk(line);
        ++pos_;
      }
    }
    for (auto& f : diff_.files) derive_paths(f);
    return std::move(diff_);
  }

 private:
  void warn(std::string msg) {
    if (warnings_) warnings_->push_back(std::move(msg));
  }

  FileDiff& current_file() {
    if (diff_.files.empty()) diff_.files.emplace_back();
    return diff_.files.back();
  }

  bool next_is(std::string_view prefix) const {
    return pos_ + 1 < lines_.size() && starts_with(lines_[pos_ + 1], prefix);
  }

  static bool has_old_file_line(const FileDiff& f) {
    for (const auto& h : f.header_lines) {
      if (starts_with(h, "--- ")) return true;
    }
    return false;
  }

  void parse_outside_hunk(std::string_view line) {
    if (in_binary_patch_ && !starts_with(line, "diff ")) {
      current_file().header_lines.emplace_back(line);
      return;
    }
    in_binary_patch_ = false;

    bool start_new = false;
    if (starts_with(line, "diff ")) {
      start_new = true;
    } else if (starts_with(line, "--- ") && next_is("+++ ")) {
      // Without a "diff" line (plain `diff -u`), the ---/+++ pair opens the
      // next file.
      start_new = diff_.files.empty() || !diff_.files.back().hunks.empty() ||
                  has_old_file_line(diff_.files.back());
    } else if (!diff_.files.empty() && !diff_.files.back().hunks.empty() &&
               !line.empty() &&
               (line[0] == ' ' || line[0] == '+' || line[0] == '-')) {
      extend_previous_hunk(line);
      return;
    }
    if (start_new) diff_.files.emplace_back();

    FileDiff& f = current_file();
    f.header_lines.emplace_back(line);
    if (starts_with(line, "Binary files ")) f.is_binary = true;
    if (starts_with(line, "GIT binary patch")) {
      f.is_binary = true;
      in_binary_patch_ = true;
    }
  }

  // A body line after the hunk's declared length ran out.
  void extend_previous_hunk(std::string_view line) {
    if (mode_ == ParseMode::kStrict) {
      throw LineCountMismatch(pos_ + 1, "body line after the hunk ended");
    }
    Hunk& h = diff_.files.back().hunks.back();
    DiffLine dl;
    dl.kind = line_kind(line[0]);
    dl.content = std::string(line.substr(1));
    h.lines.push_back(std::move(dl));
    renumber(h);
    warn("line " + std::to_string(pos_ + 1) +
         ": hunk longer than its header, lengths re-derived");
  }

  void parse_hunk() {
    const std::size_t header_line_no = pos_ + 1;
    Hunk h;
    if (!parse_hunk_header(lines_[pos_], h)) {
      throw MalformedHunkHeader(header_line_no, std::string(lines_[pos_]));
    }
    ++pos_;

    std::uint32_t old_left = h.old_len;
    std::uint32_t new_left = h.new_len;
    std::string shortfall;
    while (old_left > 0 || new_left > 0) {
      if (pos_ >= lines_.size()) {
        shortfall = "body ends early";
        break;
      }
      const auto line = lines_[pos_];
      if (starts_with(line, "\\") && !h.lines.empty()) {
        h.lines.back().missing_newline = true;
        ++pos_;
        continue;
      }
      DiffLine dl;
      if (line.empty()) {
        if (mode_ == ParseMode::kStrict || old_left == 0 || new_left == 0) {
          shortfall = "empty line inside hunk";
          break;
        }
        warn("line " + std::to_string(pos_ + 1) +
             ": empty context line treated as ' '");
        dl.kind = LineKind::kEqual;
      } else if (line[0] == ' ' && old_left > 0 && new_left > 0) {
        dl.kind = LineKind::kEqual;
      } else if (line[0] == '-' && old_left > 0) {
        dl.kind = LineKind::kRemoved;
      } else if (line[0] == '+' && new_left > 0) {
        dl.kind = LineKind::kAdded;
      } else {
        shortfall = "unexpected line '" + std::string(line.substr(0, 40)) + "'";
        break;
      }
      if (!line.empty()) dl.content = std::string(line.substr(1));
      if (dl.kind != LineKind::kAdded) --old_left;
      if (dl.kind != LineKind::kRemoved) --new_left;
      h.lines.push_back(std::move(dl));
      ++pos_;
    }
    // The no-newline marker follows the last counted line.
    if (pos_ < lines_.size() && starts_with(lines_[pos_], "\\") &&
        !h.lines.empty()) {
      h.lines.back().missing_newline = true;
      ++pos_;
    }

    if (!shortfall.empty()) {
      if (mode_ == ParseMode::kStrict) {
        throw LineCountMismatch(header_line_no, shortfall);
      }
      warn("line " + std::to_string(header_line_no) + ": " + shortfall +
           ", lengths re-derived");
    }
    renumber(h);
    current_file().hunks.push_back(std::move(h));
  }

  ParseMode mode_;
  std::vector<std::string>* warnings_;
  std::string storage_;
  std::vector<std::string_view> lines_;
  std::size_t pos_ = 0;
  bool in_binary_patch_ = false;
  UnifiedDiff diff_;
};

}  // namespace

LineKind line_kind(char marker) {
  switch (marker) {
    case '+':
      return LineKind::kAdded;
    case '-':
      return LineKind::kRemoved;
    case ' ':
      return LineKind::kEqual;
    default:
      throw UnknownMarker(marker);
  }
}

char marker_of(LineKind kind) {
  switch (kind) {
    case LineKind::kAdded:
      return '+';
    case LineKind::kRemoved:
      return '-';
    case LineKind::kEqual:
      return ' ';
  }
  return ' ';
}

std::string_view to_string(LineKind kind) {
  switch (kind) {
    case LineKind::kAdded:
      return "added";
    case LineKind::kRemoved:
      return "removed";
    case LineKind::kEqual:
      return "equal";
  }
  return "?";
}

bool is_header_line(std::string_view line) {
  for (const auto p : kHeaderPrefixes) {
    if (starts_with(line, p)) return true;
  }
  return false;
}

void renumber(Hunk& hunk) {
  std::uint32_t old_no = hunk.old_start;
  std::uint32_t new_no = hunk.new_start;
  std::uint32_t old_len = 0;
  std::uint32_t new_len = 0;
  for (auto& l : hunk.lines) {
    l.old_lineno.reset();
    l.new_lineno.reset();
    if (l.kind != LineKind::kAdded) {
      l.old_lineno = old_no++;
      ++old_len;
    }
    if (l.kind != LineKind::kRemoved) {
      l.new_lineno = new_no++;
      ++new_len;
    }
  }
  hunk.old_len = old_len;
  hunk.new_len = new_len;
}

UnifiedDiff parse_unified_diff(std::string_view text, ParseMode mode,
                               std::vector<std::string>* warnings) {
  return Parser(text, mode, warnings).run();
}

std::string render(const UnifiedDiff& diff) {
  std::string out;
  for (const auto& f : diff.files) {
    for (const auto& h : f.header_lines) {
      out += h;
      out += '\n';
    }
    for (const auto& h : f.hunks) {
      out += "@@ -";
      append_range(out, h.old_start, h.old_len);
      out += " +";
      append_range(out, h.new_start, h.new_len);
      out += " @@";
      out += h.section;
      out += '\n';
      for (const auto& l : h.lines) {
        out += marker_of(l.kind);
        out += l.content;
        out += '\n';
        if (l.missing_newline) {
          out += kNoNewline;
          out += '\n';
        }
      }
    }
  }
  return out;
}

}  // namespace todomine
