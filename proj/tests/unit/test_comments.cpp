#include <doctest.h>

#include <random>

#include "todomine/comments.hpp"
#include "todomine/diff.hpp"
#include "todomine/extract.hpp"
#include "todomine/label.hpp"
#include "todomine/text.hpp"

using namespace todomine;

namespace {

const CommentSyntax kPy = CommentSyntax::for_language(Language::kPython);
const CommentSyntax kJava = CommentSyntax::for_language(Language::kJava);

// Wraps body lines (marker included) in a single hunk with computed lengths.
UnifiedDiff hunk_of(const std::vector<std::string>& body) {
  int o = 0, a = 0;
  std::string text;
  for (const auto& l : body) {
    o += l[0] != '+';
    a += l[0] != '-';
    text += l + "\n";
  }
  return parse_unified_diff("@@ -1," + std::to_string(o) + " +1," +
                            std::to_string(a) + " @@\n" + text);
}

TripleMeta meta(Language lang = Language::kPython) {
  return {"repo", "abcdef1", lang};
}

}  // namespace

TEST_CASE("no comment markers, no spans") {
  CHECK(scan_comments(hunk_of({" x = 1", "-y = 2", "+y = 3"}), kPy).empty());
  CHECK(scan_comments(UnifiedDiff{}, kJava).empty());
}

TEST_CASE("python removed TODO line") {
  const auto spans = scan_comments(hunk_of({"-# todo: remove this", "- x = legacy()"}), kPy);
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].kind == CommentKind::kLine);
  CHECK(spans[0].line_indices == std::vector<std::size_t>{0});
  CHECK(spans[0].is_todo);
  CHECK(spans[0].token_line_index == 0u);
  CHECK(spans[0].text == "todo: remove this");
}

TEST_CASE("java block comment across two equal lines") {
  const auto spans = scan_comments(hunk_of({" /* TODO refactor", "    later */"}), kJava);
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].kind == CommentKind::kBlock);
  CHECK(spans[0].line_indices.size() == 2);
  CHECK(spans[0].is_todo);
  CHECK(spans[0].text == "TODO refactor\nlater");
}

TEST_CASE("line comments merge only within one line kind") {
  auto spans = scan_comments(hunk_of({" # a", " # b todo", " # c"}), kPy);
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].line_indices == std::vector<std::size_t>{0, 1, 2});
  CHECK(spans[0].token_line_index == 1u);

  spans = scan_comments(hunk_of({"-# todo old", "+# todo new"}), kPy);
  REQUIRE(spans.size() == 2);
  CHECK(count_todos(spans) == 2);

  spans = scan_comments(hunk_of({" // one", " int x;", " // two"}), kJava);
  CHECK(spans.size() == 2);
}

TEST_CASE("markers inside string literals are ignored") {
  CHECK(scan_comments(hunk_of({" s = \"# todo not a comment\""}), kPy).empty());
  CHECK(scan_comments(hunk_of({" String u = \"http://x/todo\";"}), kJava).empty());
  const auto spans = scan_comments(hunk_of({" s = 'a'  # TODO real"}), kPy);
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].text == "TODO real");
}

TEST_CASE("python triple quotes count only when they open the line") {
  auto spans = scan_comments(hunk_of({" \"\"\"", " TODO: docs", " \"\"\""}), kPy);
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].kind == CommentKind::kBlock);
  CHECK(spans[0].text == "TODO: docs");
  CHECK(scan_comments(hunk_of({" x = \"\"\"todo\"\"\""}), kPy).empty());
}

TEST_CASE("an unclosed block runs to the end of the hunk and never crosses it") {
  const auto d = parse_unified_diff(
      "@@ -1,2 +1,2 @@\n /* start\n  todo inside\n@@ -10 +10 @@\n */ int x;\n");
  const auto spans = scan_comments(d, kJava);
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].hunk_index == 0);
  CHECK(spans[0].line_indices == std::vector<std::size_t>{0, 1});
}

TEST_CASE("binary files are not scanned") {
  UnifiedDiff d;
  d.files.emplace_back();
  d.files[0].is_binary = true;
  d.files[0].hunks.push_back(hunk_of({"+# todo"}).files[0].hunks[0]);
  CHECK(scan_comments(d, kPy).empty());
}

TEST_CASE("count_todos") {
  CHECK(count_todos({}) == 0);
  CommentSpan todo;
  todo.is_todo = true;
  CommentSpan plain;
  const std::vector<CommentSpan> one{todo, plain};
  const std::vector<CommentSpan> two{todo, todo};
  CHECK(count_todos(one) == 1);
  CHECK(count_todos(two) == 2);
}

TEST_CASE("strip_change_markers") {
  CHECK(strip_change_markers({}).empty());
  DiffLine a{LineKind::kRemoved, "# todo: fix", {}, {}, false};
  CHECK(strip_change_markers(std::span(&a, 1)) == "todo: fix");
  std::vector<DiffLine> block{{LineKind::kEqual, "/* todo x", {}, {}, false},
                              {LineKind::kEqual, "later */", {}, {}, false}};
  CHECK(strip_change_markers(block) == "todo x\nlater");
  std::vector<DiffLine> javadoc{{LineKind::kEqual, "/**", {}, {}, false},
                                {LineKind::kEqual, " * TODO: y", {}, {}, false},
                                {LineKind::kEqual, " */", {}, {}, false}};
  CHECK(strip_change_markers(javadoc) == "TODO: y");
  CHECK(strip_comment_markers("#+- # todo") == "todo");
}

TEST_CASE("split_triple examples") {
  const Normalizer n;
  auto r = split_triple(hunk_of({"-# TODO: a", " x = 1", "+# todo: b"}), "msg", kPy,
                        meta(), n);
  REQUIRE(std::holds_alternative<Skip>(r));
  CHECK(std::get<Skip>(r).reason == SkipReason::kMultipleTodos);

  r = split_triple(hunk_of({" x = 1", "-y = 2", "+y = 3"}), "msg", kPy, meta(), n);
  REQUIRE(std::holds_alternative<Skip>(r));
  CHECK(std::get<Skip>(r).reason == SkipReason::kNoTodo);

  r = split_triple(hunk_of({" def f():", "-    # TODO: support unicode", "-    return S"}),
                   "drop it.", kPy, meta(), n);
  REQUIRE(std::holds_alternative<Triple>(r));
  const auto& t = std::get<Triple>(r);
  CHECK(t.todo_comment == "todo: support unicode");
  CHECK(t.scope == LineKind::kRemoved);
  CHECK(t.code_change == "@@\n def f():\n-    return s\n");
  CHECK(t.commit_msg == "drop it.");
  CHECK(t.repo == "repo");
  CHECK(t.commit_id == "abcdef1");
}

TEST_CASE("split_triple drops a hunk that held only the comment") {
  const Normalizer n;
  const auto d = parse_unified_diff(
      "--- a/A.java\n+++ b/A.java\n@@ -1 +1 @@\n-// TODO gone\n+int x;\n"
      "@@ -9,0 +9 @@\n+// TODO Abc1234ef\n");
  auto r = split_triple(d, "m", kJava, meta(Language::kJava), n);
  REQUIRE(std::holds_alternative<Skip>(r));

  const auto d2 = parse_unified_diff(
      "--- a/A.java\n+++ b/A.java\n@@ -1 +1 @@\n-int y;\n+int x;\n"
      "@@ -9,0 +9 @@\n+// TODO see Abc1234ef\n");
  r = split_triple(d2, "m", kJava, meta(Language::kJava), n);
  REQUIRE(std::holds_alternative<Triple>(r));
  CHECK(std::get<Triple>(r).code_change == "@@\n-int y;\n+int x;\n");
  CHECK(std::get<Triple>(r).todo_comment == "todo see <commit_id>");
  CHECK(std::get<Triple>(r).scope == LineKind::kAdded);
}

TEST_CASE("scope_kind follows the token line") {
  CommentSpan s;
  s.line_indices = {3, 4};
  s.line_kinds = {LineKind::kEqual, LineKind::kAdded};
  s.is_todo = true;
  s.token_line_index = 3;
  CHECK(scope_kind(s) == LineKind::kEqual);
  s.token_line_index = 4;
  CHECK(scope_kind(s) == LineKind::kAdded);

  const auto spans = scan_comments(hunk_of({" /* TODO x", "+ more */"}), kJava);
  REQUIRE(spans.size() == 1);
  CHECK(scope_kind(spans[0]) == LineKind::kEqual);
}

TEST_CASE("label_triple") {
  CHECK(label_triple(LineKind::kRemoved) == Label::kPositive);
  CHECK(label_triple(LineKind::kEqual) == Label::kNegative);
  CHECK(label_triple(LineKind::kAdded) == Label::kDiscard);
  static_assert(label_triple(LineKind::kRemoved) == Label::kPositive);
  CHECK(parse_label("positive") == Label::kPositive);
  CHECK(parse_label(to_string(Label::kNegative)) == Label::kNegative);
  CHECK_THROWS(parse_label("discard"));
}

TEST_CASE("random hunks: extracted triples keep the invariants") {
  const Normalizer n;
  std::mt19937 rng(8);
  const std::vector<std::string> pool = {
      "x = 1", "# todo: a", "# note", "y = f(x)  # TODO b", "\"\"\"", "TODO c",
      "s = '# todo'", "# -- TODO d", "pass"};
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> kind(0, 2), count(1, 6);
  int emitted = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<std::string> body;
    for (int i = count(rng); i > 0; --i) {
      body.push_back(std::string(1, " +-"[kind(rng)]) + pool[pick(rng)]);
    }
    const auto d = hunk_of(body);
    const auto spans = scan_comments(d, kPy);
    CHECK(scan_comments(d, kPy) == spans);
    for (const auto& s : spans) {
      REQUIRE_FALSE(s.line_indices.empty());
      for (std::size_t i = 1; i < s.line_indices.size(); ++i) {
        CHECK(s.line_indices[i] == s.line_indices[i - 1] + 1);
      }
      if (s.is_todo) {
        REQUIRE(s.token_line_index.has_value());
        CHECK(std::find(s.line_indices.begin(), s.line_indices.end(),
                        *s.token_line_index) != s.line_indices.end());
      }
    }
    const auto r = split_triple(d, "m", kPy, meta(), n);
    if (!std::holds_alternative<Triple>(r)) {
      CHECK(count_todos(spans) != 1);
      continue;
    }
    CHECK(count_todos(spans) == 1);
    ++emitted;
    const auto& t = std::get<Triple>(r);
    CHECK(contains_todo_token(t.todo_comment));
    for (const auto line : split_lines(t.todo_comment)) {
      CHECK(line.substr(0, 1) != "+");
      CHECK(line.substr(0, 1) != "-");
      CHECK(line.substr(0, 1) != "#");
    }
    // Partition: body lines of code_change plus the span's lines cover the
    // hunk exactly.
    const auto& span = *std::find_if(spans.begin(), spans.end(),
                                     [](const CommentSpan& s) { return s.is_todo; });
    std::size_t rest = 0;
    for (const auto line : split_lines(t.code_change)) rest += line != "@@";
    CHECK(rest + span.line_indices.size() == d.files[0].hunks[0].lines.size());
  }
  CHECK(emitted > 100);
}
