#include <doctest.h>

#include <cctype>
#include <random>

#include "oracles.hpp"
#include "todomine/diff.hpp"
#include "todomine/errors.hpp"
#include "todomine/normalize.hpp"
#include "todomine/text.hpp"

using namespace todomine;

namespace {

CommitRecord record_of_size(std::size_t n, char fill = 'x') {
  return make_commit_record("r", "abcdef1", 0, "m", std::string(n, fill));
}

}  // namespace

TEST_CASE("check_size boundary is inclusive") {
  const Normalizer n;
  CHECK(n.check_size(record_of_size(0)) == SizeCheck::kPass);
  CHECK(n.check_size(record_of_size(1'048'576)) == SizeCheck::kPass);
  CHECK(n.check_size(record_of_size(1'048'577)) == SizeCheck::kReject);
  // Content is irrelevant.
  CHECK(n.check_size(record_of_size(1'048'576, '\n')) == SizeCheck::kPass);
  CHECK(n.check_size(record_of_size(1'048'577, '+')) == SizeCheck::kReject);

  NormalizationConfig cfg;
  cfg.max_diff_bytes = 10;
  const Normalizer small(cfg);
  CHECK(small.check_size(record_of_size(10)) == SizeCheck::kPass);
  CHECK(small.check_size(record_of_size(11)) == SizeCheck::kReject);
}

TEST_CASE("normalize_diff examples") {
  const Normalizer n;
  CHECK(n.normalize_diff(UnifiedDiff{}).empty());

  const auto d = parse_unified_diff(
      "diff --git a/X.py b/X.py\n"
      "index 3f1a2b4..9c8d7e6 100644\n"
      "--- a/X.py\n"
      "+++ b/X.py\n"
      "@@ -10,2 +10,2 @@ class Foo:\n"
      "-    Old()\n"
      "+ # See Commit 4f2a9c1abcd\n"
      "     Keep\n");
  CHECK(n.normalize_diff(d) ==
        "@@\n-    old()\n+ # see commit <commit_id>\n     keep\n");
}

TEST_CASE("normalize_message examples") {
  const Normalizer n;
  CHECK(n.normalize_message("Fix bug. Also refactor tests.") == "fix bug.");
  CHECK(n.normalize_message("Close #42") == "close <issue_id>");
  CHECK_THROWS_AS(n.normalize_message("   "), EmptyMessage);
  CHECK_THROWS_AS(n.normalize_message(""), EmptyMessage);
  CHECK(n.normalize_message("\n\nBody after blanks") == "body after blanks");
  CHECK(n.normalize_message("  Update README\n\nlong body.") == "update readme");
  CHECK(n.normalize_message("Really?! yes") == "really?");
  CHECK(n.normalize_message("Revert 1a2b3c4d5e. Oops") == "revert <commit_id>.");
  CHECK(n.normalize_message("See #1234abc") == "see <issue_id>abc");
}

TEST_CASE("replace_ids examples") {
  const Normalizer n;
  CHECK(n.replace_ids("").empty());
  CHECK(n.replace_ids("merge deadbeef00 into abc1234") ==
        "merge <commit_id> into <commit_id>");
  CHECK(n.replace_ids("fixes #17 and #9") == "fixes <issue_id> and <issue_id>");
  CHECK(n.replace_ids("a decade of beefed up code") ==
        "a decade of beefed up code");
  CHECK(n.replace_ids("abc123") == "abc123");  // too short
  CHECK(n.replace_ids(std::string(41, '1')) == std::string(41, '1'));
  CHECK(n.replace_ids(std::string(40, '1')) == "<commit_id>");
}

TEST_CASE("invalid configuration is rejected up front") {
  NormalizationConfig cfg;
  cfg.commit_id_pattern = "([";
  CHECK_THROWS_AS(Normalizer{cfg}, InvalidPattern);
  cfg = {};
  cfg.issue_placeholder = "";
  CHECK_THROWS_AS(Normalizer{cfg}, InvalidPattern);
  cfg = {};
  cfg.commit_placeholder = "<a b>";
  CHECK_THROWS_AS(Normalizer{cfg}, InvalidPattern);
  cfg = {};
  cfg.max_diff_bytes = 0;
  CHECK_THROWS_AS(Normalizer{cfg}, InvalidPattern);
}

TEST_CASE("random text: commit substitution matches the word-run oracle and is idempotent") {
  const Normalizer n;
  std::mt19937 rng(5);
  const std::string alphabet = "0123456789abcdefxyz _.-#/";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> len(0, 60);
  for (int trial = 0; trial < 3000; ++trial) {
    std::string s;
    for (int k = len(rng); k > 0; --k) s += alphabet[pick(rng)];
    CHECK(n.replace_commit_ids(s) == testing::oracle_replace_commit_ids(s));
    const auto once = n.replace_ids(s);
    CHECK(n.replace_ids(once) == once);
  }
}

TEST_CASE("random diffs: no uppercase outside placeholders and no header lines") {
  const Normalizer n;
  std::mt19937 rng(17);
  const std::string alphabet = "ABCXYZabc0123456789 #+-@";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> len(0, 20), kind(0, 2), count(1, 6);
  for (int trial = 0; trial < 300; ++trial) {
    std::string text = "diff --git a/F b/F\nindex 1234567..89abcde 100644\n--- a/F\n+++ b/F\n";
    const int hunks = count(rng);
    for (int h = 0; h < hunks; ++h) {
      std::string body;
      int o = 0, a = 0;
      for (int i = count(rng); i > 0; --i) {
        const char m = " +-"[kind(rng)];
        body += m;
        for (int k = len(rng); k > 0; --k) body += alphabet[pick(rng)];
        body += '\n';
        o += m != '+';
        a += m != '-';
      }
      text += "@@ -1," + std::to_string(o) + " +1," + std::to_string(a) + " @@ Sec\n" + body;
    }
    const auto out = n.normalize_diff(parse_unified_diff(text));
    for (const auto line : split_lines(out)) {
      if (line != "@@") CHECK_FALSE(is_header_line(line));
      CHECK(line.substr(0, 3) != "@@ ");
    }
    std::string without = out;
    for (std::size_t p; (p = without.find("<commit_id>")) != std::string::npos;) {
      without.erase(p, 11);
    }
    for (char c : without) CHECK_FALSE(std::isupper(static_cast<unsigned char>(c)));
  }
}

TEST_CASE("random messages: a terminator can only be the final character") {
  const Normalizer n;
  std::mt19937 rng(23);
  const std::string alphabet = "Ab .!?\n#12 cafe1234567";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> len(0, 40);
  for (int trial = 0; trial < 3000; ++trial) {
    std::string s;
    for (int k = len(rng); k > 0; --k) s += alphabet[pick(rng)];
    std::string out;
    try {
      out = n.normalize_message(s);
    } catch (const EmptyMessage&) {
      continue;
    }
    const auto first = out.find_first_of(".!?");
    CHECK((first == std::string::npos || first == out.size() - 1));
    CHECK(out.find('\n') == std::string::npos);
    CHECK(out == trim(out));
  }
}
