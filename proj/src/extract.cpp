#include "todomine/extract.hpp"

#include <algorithm>

#include "todomine/label.hpp"
#include "todomine/text.hpp"

namespace todomine {

std::string_view to_string(SkipReason reason) {
  switch (reason) {
    case SkipReason::kNoTodo:
      return "no_todo";
    case SkipReason::kMultipleTodos:
      return "multiple_todos";
  }
  return "?";
}

ExtractResult split_triple(const UnifiedDiff& diff, std::string normalized_msg,
                           const CommentSyntax& syntax, const TripleMeta& meta,
                           const Normalizer& normalizer) {
  const auto spans = scan_comments(diff, syntax);
  const auto todos = count_todos(spans);
  if (todos == 0) return Skip{SkipReason::kNoTodo};
  if (todos > 1) return Skip{SkipReason::kMultipleTodos};

  const CommentSpan& span =
      *std::find_if(spans.begin(), spans.end(),
                    [](const CommentSpan& s) { return s.is_todo; });

  UnifiedDiff rest = diff;
  auto& hunks = rest.files[span.file_index].hunks;
  auto& lines = hunks[span.hunk_index].lines;
  // line_indices is contiguous
  lines.erase(lines.begin() + static_cast<std::ptrdiff_t>(span.line_indices.front()),
              lines.begin() + static_cast<std::ptrdiff_t>(span.line_indices.back() + 1));
  if (lines.empty()) {
    hunks.erase(hunks.begin() + static_cast<std::ptrdiff_t>(span.hunk_index));
  } else {
    renumber(hunks[span.hunk_index]);
  }

  Triple t;
  t.code_change = normalizer.normalize_diff(rest);
  t.todo_comment = normalizer.replace_commit_ids(to_lower_ascii(span.text));
  t.commit_msg = std::move(normalized_msg);
  t.scope = scope_kind(span);
  t.repo = meta.repo;
  t.commit_id = meta.commit_id;
  t.language = meta.language;
  return t;
}

}  // namespace todomine
