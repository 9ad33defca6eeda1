#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "todomine/text.hpp"

using namespace todomine;

TEST_CASE("find_todo_token respects alphanumeric boundaries") {
  CHECK(find_todo_token("TODO") == 0u);
  CHECK(find_todo_token("# todo: x") == 2u);
  CHECK(find_todo_token("_todo_") == 1u);
  CHECK_FALSE(find_todo_token("todos"));
  CHECK_FALSE(find_todo_token("mastodon"));
  CHECK_FALSE(find_todo_token("2todo"));
  CHECK(find_todo_token("xtodo todo") == 6u);
}

TEST_CASE("token scan agrees with the regex oracle on random strings") {
  std::mt19937 rng(7);
  const std::string alphabet = "todTODx1_ -:#\n";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> len(0, 12);
  for (int n = 0; n < 5000; ++n) {
    std::string s;
    for (int k = len(rng); k > 0; --k) s += alphabet[pick(rng)];
    CHECK_MESSAGE(contains_todo_token(s) == testing::oracle_has_todo_token(s),
                  s);
  }
}

TEST_CASE("trim and split_lines") {
  CHECK(trim("  a b \n") == "a b");
  CHECK(trim(" \t ").empty());
  CHECK(split_lines("").empty());
  CHECK(split_lines("a\nb\n") == std::vector<std::string_view>{"a", "b"});
  CHECK(split_lines("a\n\nb") == std::vector<std::string_view>{"a", "", "b"});
}

TEST_CASE("to_lower_ascii leaves UTF-8 bytes alone") {
  CHECK(to_lower_ascii("ÄBC") == "Äbc");
}

TEST_CASE("utf8 validation and replacement") {
  CHECK(is_valid_utf8("plain"));
  CHECK(is_valid_utf8("caf\xC3\xA9"));
  CHECK_FALSE(is_valid_utf8("\xC3"));
  CHECK_FALSE(is_valid_utf8("\xED\xA0\x80"));  // surrogate
  bool replaced = false;
  CHECK(sanitize_utf8("a\xFF" "b", &replaced) == "a\xEF\xBF\xBD" "b");
  CHECK(replaced);
  CHECK(sanitize_utf8("ok", &replaced) == "ok");
  CHECK_FALSE(replaced);
}
