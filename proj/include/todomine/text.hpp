#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace todomine {

// ASCII-only case folding; bytes >= 0x80 pass through untouched so UTF-8
// sequences survive intact.
std::string to_lower_ascii(std::string_view s);

std::string_view trim(std::string_view s);

// Splits on '\n'. A trailing newline does not produce an empty last element.
std::vector<std::string_view> split_lines(std::string_view s);

// Offset of the first case-insensitive "todo" whose neighbours are not ASCII
// alphanumerics (or are the string boundary).
std::optional<std::size_t> find_todo_token(std::string_view s);

inline bool contains_todo_token(std::string_view s) {
  return find_todo_token(s).has_value();
}

bool is_valid_utf8(std::string_view s);

// Replaces every invalid byte sequence with U+FFFD. `replaced` is set when at
// least one replacement happened.
std::string sanitize_utf8(std::string_view s, bool* replaced = nullptr);

}  // namespace todomine
