#include "todomine/label.hpp"

#include <algorithm>

#include "todomine/errors.hpp"

namespace todomine {

std::string_view to_string(Label label) {
  switch (label) {
    case Label::kPositive:
      return "positive";
    case Label::kNegative:
      return "negative";
    case Label::kDiscard:
      return "discard";
  }
  return "?";
}

Label parse_label(std::string_view s) {
  if (s == "positive") return Label::kPositive;
  if (s == "negative") return Label::kNegative;
  throw Error("unknown label '" + std::string(s) + "'");
}

LineKind scope_kind(const CommentSpan& span) {
  if (!span.is_todo || !span.token_line_index) {
    throw Error("scope_kind needs a TODO span");
  }
  const auto it = std::find(span.line_indices.begin(), span.line_indices.end(),
                            *span.token_line_index);
  if (it == span.line_indices.end()) {
    throw Error("token line lies outside its span");
  }
  return span.line_kinds[static_cast<std::size_t>(it -
                                                  span.line_indices.begin())];
}

}  // namespace todomine
