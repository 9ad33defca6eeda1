#include "todomine/comments.hpp"

#include <algorithm>

#include "todomine/text.hpp"

namespace todomine {

namespace {

bool starts_with(std::string_view s, std::string_view p) {
  return s.substr(0, p.size()) == p;
}

bool ends_with(std::string_view s, std::string_view p) {
  return s.size() >= p.size() && s.substr(s.size() - p.size()) == p;
}

struct CommentStart {
  std::size_t offset = std::string_view::npos;
  CommentKind kind = CommentKind::kLine;
  std::size_t marker_len = 0;
  std::string close;  // block only
};

// First comment opener on the line outside a (single-line) string literal.
CommentStart find_comment_start(std::string_view line,
                                const CommentSyntax& syntax) {
  const auto first_code = line.find_first_not_of(" \t");
  char quote = 0;
  for (std::size_t j = 0; j < line.size(); ++j) {
    const char c = line[j];
    if (quote != 0) {
      if (c == '\\') {
        ++j;
      } else if (c == quote) {
        quote = 0;
      }
      continue;
    }
    const auto rest = line.substr(j);
    if (!syntax.block_must_open_line || j == first_code) {
      for (const auto& [open, close] : syntax.block_delimiters) {
        if (starts_with(rest, open)) {
          return {j, CommentKind::kBlock, open.size(), close};
        }
      }
    }
    for (const auto& m : syntax.line_markers) {
      if (starts_with(rest, m)) return {j, CommentKind::kLine, m.size(), {}};
    }
    if (c == '"' || c == '\'') quote = c;
  }
  return {};
}

class HunkScanner {
 public:
  HunkScanner(const CommentSyntax& syntax, std::size_t file_index,
              std::size_t hunk_index, std::vector<CommentSpan>& out)
      : syntax_(syntax),
        file_index_(file_index),
        hunk_index_(hunk_index),
        out_(out) {}

  void scan(const Hunk& hunk) {
    for (std::size_t i = 0; i < hunk.lines.size(); ++i) {
      const DiffLine& line = hunk.lines[i];
      const std::string_view c = line.content;

      if (in_block_) {
        const auto close = c.find(block_close_);
        add_line(i, line.kind,
                 close == std::string_view::npos
                     ? c
                     : c.substr(0, close + block_close_.size()));
        if (close != std::string_view::npos) {
          in_block_ = false;
          flush();
        }
        continue;
      }

      const auto start = find_comment_start(c, syntax_);
      if (start.offset == std::string_view::npos) {
        flush();
        continue;
      }
      if (start.kind == CommentKind::kLine) {
        const bool continues = open_ && open_kind_ == CommentKind::kLine &&
                               open_line_kind_ == line.kind &&
                               segments_.size() > 0 &&
                               current_.line_indices.back() + 1 == i;
        if (!continues) flush();
        begin_if_needed(CommentKind::kLine, line.kind);
        add_line(i, line.kind, c.substr(start.offset));
        continue;
      }

      flush();
      begin_if_needed(CommentKind::kBlock, line.kind);
      const auto body_from = start.offset + start.marker_len;
      const auto close = c.find(start.close, body_from);
      if (close == std::string_view::npos) {
        add_line(i, line.kind, c.substr(start.offset));
        in_block_ = true;
        block_close_ = start.close;
      } else {
        add_line(i, line.kind,
                 c.substr(start.offset,
                          close + start.close.size() - start.offset));
        flush();
      }
    }
    in_block_ = false;
    flush();
  }

 private:
  void begin_if_needed(CommentKind kind, LineKind line_kind) {
    if (open_) return;
    open_ = true;
    open_kind_ = kind;
    open_line_kind_ = line_kind;
    current_ = CommentSpan{};
    current_.file_index = file_index_;
    current_.hunk_index = hunk_index_;
    current_.kind = kind;
    segments_.clear();
  }

  void add_line(std::size_t index, LineKind kind, std::string_view segment) {
    current_.line_indices.push_back(index);
    current_.line_kinds.push_back(kind);
    segments_.emplace_back(segment);
    if (!current_.token_line_index && contains_todo_token(segment)) {
      current_.token_line_index = index;
      current_.is_todo = true;
    }
  }

  void flush() {
    if (!open_) return;
    open_ = false;
    std::string text;
    for (const auto& s : segments_) {
      const auto stripped = strip_comment_markers(s);
      if (stripped.empty()) continue;
      if (!text.empty()) text += '\n';
      text += stripped;
    }
    current_.text = std::move(text);
    out_.push_back(std::move(current_));
    segments_.clear();
  }

  const CommentSyntax& syntax_;
  std::size_t file_index_;
  std::size_t hunk_index_;
  std::vector<CommentSpan>& out_;

  bool open_ = false;
  CommentKind open_kind_ = CommentKind::kLine;
  LineKind open_line_kind_ = LineKind::kEqual;
  bool in_block_ = false;
  std::string block_close_;
  CommentSpan current_;
  std::vector<std::string> segments_;
};

}  // namespace

CommentSyntax CommentSyntax::for_language(Language lang) {
  CommentSyntax s;
  s.language = lang;
  switch (lang) {
    case Language::kPython:
      s.line_markers = {"#"};
      s.block_delimiters = {{"\"\"\"", "\"\"\""}, {"'''", "'''"}};
      s.block_must_open_line = true;
      break;
    case Language::kJava:
      s.line_markers = {"//"};
      s.block_delimiters = {{"/*", "*/"}};
      break;
  }
  return s;
}

std::vector<CommentSpan> scan_comments(const UnifiedDiff& diff,
                                       const CommentSyntax& syntax) {
  std::vector<CommentSpan> spans;
  for (std::size_t f = 0; f < diff.files.size(); ++f) {
    const auto& file = diff.files[f];
    if (file.is_binary) continue;
    for (std::size_t h = 0; h < file.hunks.size(); ++h) {
      HunkScanner(syntax, f, h, spans).scan(file.hunks[h]);
    }
  }
  return spans;
}

std::size_t count_todos(std::span<const CommentSpan> spans) {
  return static_cast<std::size_t>(std::count_if(
      spans.begin(), spans.end(),
      [](const CommentSpan& s) { return s.is_todo; }));
}

std::string strip_comment_markers(std::string_view line) {
  static constexpr std::string_view kLeading[] = {
      "\"\"\"", "'''", "/**", "/*", "//", "#", "*/", "+", "-", "*"};
  static constexpr std::string_view kTrailing[] = {"*/", "\"\"\"", "'''"};

  std::string_view s = trim(line);
  bool changed = true;
  while (changed && !s.empty()) {
    changed = false;
    for (const auto p : kLeading) {
      if (starts_with(s, p)) {
        s.remove_prefix(p.size());
        s = trim(s);
        changed = true;
        break;
      }
    }
    for (const auto p : kTrailing) {
      if (ends_with(s, p)) {
        s.remove_suffix(p.size());
        s = trim(s);
        changed = true;
        break;
      }
    }
  }
  return std::string(s);
}

std::string strip_change_markers(std::span<const DiffLine> lines) {
  std::string out;
  for (const auto& l : lines) {
    const auto stripped = strip_comment_markers(l.content);
    if (stripped.empty()) continue;
    if (!out.empty()) out += '\n';
    out += stripped;
  }
  return out;
}

}  // namespace todomine
