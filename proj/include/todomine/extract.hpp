#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "todomine/comments.hpp"
#include "todomine/commit.hpp"
#include "todomine/diff.hpp"
#include "todomine/normalize.hpp"

namespace todomine {

struct Triple {
  std::string code_change;
  std::string todo_comment;
  std::string commit_msg;
  LineKind scope = LineKind::kEqual;
  std::string repo;
  std::string commit_id;
  Language language = Language::kPython;

  friend bool operator==(const Triple&, const Triple&) = default;
};

enum class SkipReason { kNoTodo, kMultipleTodos };

std::string_view to_string(SkipReason reason);

struct Skip {
  SkipReason reason;
  friend bool operator==(const Skip&, const Skip&) = default;
};

using ExtractResult = std::variant<Triple, Skip>;

struct TripleMeta {
  std::string repo;
  std::string commit_id;
  Language language = Language::kPython;
};

// Pulls the single TODO comment out of `diff`. The comment's lines are cut
// from their hunk; what is left becomes code_change via normalize_diff. The
// comment text is lowercased with commit ids substituted, like the rest of
// the normalized diff.
ExtractResult split_triple(const UnifiedDiff& diff, std::string normalized_msg,
                           const CommentSyntax& syntax, const TripleMeta& meta,
                           const Normalizer& normalizer);

}  // namespace todomine
