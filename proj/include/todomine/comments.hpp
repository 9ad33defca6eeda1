#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "todomine/commit.hpp"
#include "todomine/diff.hpp"

namespace todomine {

struct CommentSyntax {
  Language language = Language::kPython;
  std::vector<std::string> line_markers;
  std::vector<std::pair<std::string, std::string>> block_delimiters;
  // Python only counts a triple-quoted block that opens its line; a
  // triple-quoted string on the right of an assignment is data.
  bool block_must_open_line = false;

  static CommentSyntax for_language(Language lang);
};

enum class CommentKind { kLine, kBlock };

struct CommentSpan {
  std::size_t file_index = 0;
  std::size_t hunk_index = 0;
  // Contiguous indices into the hunk's lines.
  std::vector<std::size_t> line_indices;
  // Parallel to line_indices.
  std::vector<LineKind> line_kinds;
  // Comment content with markers stripped, one non-empty line per row.
  std::string text;
  CommentKind kind = CommentKind::kLine;
  bool is_todo = false;
  // Hunk line index of the first line whose comment text has the token.
  std::optional<std::size_t> token_line_index;

  friend bool operator==(const CommentSpan&, const CommentSpan&) = default;
};

// Every maximal comment region, hunk by hunk. Consecutive line comments of
// the same LineKind merge into one span; block comments run until their
// closing delimiter or the end of the hunk. A marker after an unclosed quote
// on the same line is taken to be inside a string literal.
std::vector<CommentSpan> scan_comments(const UnifiedDiff& diff,
                                       const CommentSyntax& syntax);

std::size_t count_todos(std::span<const CommentSpan> spans);

// Strips comment delimiters ("#", "//", "/*", "*/", leading "*", triple
// quotes) and leading '+'/'-' runs from both edges of one line, then trims.
std::string strip_comment_markers(std::string_view line);

// Per line: strip_comment_markers; empty results are dropped; rows joined
// with '\n'.
std::string strip_change_markers(std::span<const DiffLine> lines);

}  // namespace todomine
