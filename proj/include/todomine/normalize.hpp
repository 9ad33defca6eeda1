#pragma once

#include <cstddef>
#include <regex>
#include <string>
#include <string_view>

#include "todomine/commit.hpp"
#include "todomine/diff.hpp"

namespace todomine {

struct NormalizationConfig {
  // Word-bounded lowercase hex run of 7..40 characters with at least one
  // digit, so English words such as "decade" or "beefed" survive.
  std::string commit_id_pattern = R"(\b(?=[0-9a-f]*[0-9])[0-9a-f]{7,40}\b)";
  std::string issue_id_pattern = R"(#[0-9]+)";
  std::string commit_placeholder = "<commit_id>";
  std::string issue_placeholder = "<issue_id>";
  std::size_t max_diff_bytes = 1'048'576;

  friend bool operator==(const NormalizationConfig&,
                         const NormalizationConfig&) = default;
};

enum class SizeCheck { kPass, kReject };

// Compiled, validated form of a NormalizationConfig. Construction throws
// InvalidPattern for bad regexes or placeholders, so per-call functions
// cannot fail on configuration.
class Normalizer {
 public:
  explicit Normalizer(NormalizationConfig cfg = {});

  const NormalizationConfig& config() const { return cfg_; }

  // Inclusive bound on the raw diff size; content is never looked at.
  SizeCheck check_size(const CommitRecord& record) const;

  // Drops file headers, reduces hunk headers to "@@", lowercases body lines
  // (marker kept) and substitutes commit ids.
  std::string normalize_diff(const UnifiedDiff& diff) const;

  // First sentence or first line, whichever ends sooner, lowercased, with
  // issue then commit ids substituted. Throws EmptyMessage.
  std::string normalize_message(std::string_view message) const;

  // Issue ids first, then commit ids on the text between issue placeholders.
  // Expects lowercased input.
  std::string replace_ids(std::string_view text) const;

  std::string replace_commit_ids(std::string_view text) const;

 private:
  NormalizationConfig cfg_;
  std::regex commit_re_;
  std::regex issue_re_;
};

}  // namespace todomine
