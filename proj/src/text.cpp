#include <cctype>

#include "todomine/text.hpp"

namespace todomine {

namespace {

bool is_alnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

char lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

}  // namespace

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(kSpace);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(kSpace);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_lines(std::string_view s) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto nl = s.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(s.substr(pos));
      break;
    }
    lines.push_back(s.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

std::optional<std::size_t> find_todo_token(std::string_view s) {
  if (s.size() < 4) return std::nullopt;
  for (std::size_t i = 0; i + 4 <= s.size(); ++i) {
    if (lower(s[i]) != 't' || lower(s[i + 1]) != 'o' ||
        lower(s[i + 2]) != 'd' || lower(s[i + 3]) != 'o') {
      continue;
    }
    const bool left_ok = i == 0 || !is_alnum(s[i - 1]);
    const bool right_ok = i + 4 == s.size() || !is_alnum(s[i + 4]);
    if (left_ok && right_ok) return i;
  }
  return std::nullopt;
}

}  // namespace todomine
