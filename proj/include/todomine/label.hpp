#pragma once

#include <string_view>

#include "todomine/comments.hpp"
#include "todomine/diff.hpp"

namespace todomine {

enum class Label { kPositive, kNegative, kDiscard };

std::string_view to_string(Label label);
// Accepts only the persisted values "positive" and "negative".
Label parse_label(std::string_view s);

// Kind of the line that carries the "todo" token. Requires span.is_todo.
LineKind scope_kind(const CommentSpan& span);

// Removed -> Positive (task done), Equal -> Negative (change unrelated),
// Added -> Discard (comment introduced by this commit).
constexpr Label label_triple(LineKind scope) {
  switch (scope) {
    case LineKind::kRemoved:
      return Label::kPositive;
    case LineKind::kEqual:
      return Label::kNegative;
    case LineKind::kAdded:
      return Label::kDiscard;
  }
  return Label::kDiscard;
}

}  // namespace todomine
