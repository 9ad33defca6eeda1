#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace todomine {

enum class LineKind { kAdded, kRemoved, kEqual };

// '+' -> kAdded, '-' -> kRemoved, ' ' -> kEqual; anything else throws
// UnknownMarker.
LineKind line_kind(char marker);
char marker_of(LineKind kind);
std::string_view to_string(LineKind kind);

struct DiffLine {
  LineKind kind = LineKind::kEqual;
  std::string content;  // without the marker character
  std::optional<std::uint32_t> old_lineno;
  std::optional<std::uint32_t> new_lineno;
  // Followed by "\ No newline at end of file".
  bool missing_newline = false;

  friend bool operator==(const DiffLine&, const DiffLine&) = default;
};

struct Hunk {
  std::uint32_t old_start = 0;
  std::uint32_t old_len = 0;
  std::uint32_t new_start = 0;
  std::uint32_t new_len = 0;
  // Everything after the closing "@@", leading space included.
  std::string section;
  std::vector<DiffLine> lines;

  friend bool operator==(const Hunk&, const Hunk&) = default;
};

struct FileDiff {
  std::string old_path;
  std::string new_path;
  std::vector<std::string> header_lines;
  std::vector<Hunk> hunks;
  bool is_binary = false;

  friend bool operator==(const FileDiff&, const FileDiff&) = default;
};

struct UnifiedDiff {
  std::vector<FileDiff> files;

  friend bool operator==(const UnifiedDiff&, const UnifiedDiff&) = default;
};

enum class ParseMode {
  // Hunk bodies must agree with their headers exactly.
  kStrict,
  // Disagreeing hunks are re-measured from their body and a warning is
  // recorded. Mined history is full of hand-edited patches.
  kLenient,
};

// Splits unified-diff text into files, hunks and classified lines. Invalid
// UTF-8 is replaced with U+FFFD (with a warning) in both modes.
UnifiedDiff parse_unified_diff(std::string_view text,
                               ParseMode mode = ParseMode::kStrict,
                               std::vector<std::string>* warnings = nullptr);

// Canonical unified-diff text. Single-line ranges are written without the
// ",1" suffix, the way git and GNU diff do.
std::string render(const UnifiedDiff& diff);

// Shared by the parser and by callers that edit hunks in place.
void renumber(Hunk& hunk);

// True for the file-level metadata prefixes git and GNU diff emit.
bool is_header_line(std::string_view line);

}  // namespace todomine
