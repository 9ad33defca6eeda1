#include "todomine/normalize.hpp"

#include <algorithm>
#include <cctype>

#include "todomine/errors.hpp"
#include "todomine/text.hpp"

namespace todomine {

namespace {

std::regex compile(const std::string& source, const char* what) {
  try {
    return std::regex(source, std::regex::ECMAScript | std::regex::optimize);
  } catch (const std::regex_error& e) {
    throw InvalidPattern(std::string("invalid ") + what + " '" + source +
                         "': " + e.what());
  }
}

void check_placeholder(const std::string& p, const char* what) {
  const bool has_space = std::any_of(p.begin(), p.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
  });
  if (p.empty() || has_space) {
    throw InvalidPattern(std::string(what) +
                         " must be non-empty and free of whitespace");
  }
}

void replace_all(std::string_view text, const std::regex& re,
                 const std::string& placeholder, std::string& out) {
  using It = std::string_view::const_iterator;
  std::regex_iterator<It> it(text.begin(), text.end(), re);
  std::regex_iterator<It> end;
  auto last = text.begin();
  for (; it != end; ++it) {
    const auto& m = *it;
    // Zero-length matches would loop on placeholder insertion.
    if (m.length(0) == 0) continue;
    out.append(last, m[0].first);
    out += placeholder;
    last = m[0].second;
  }
  out.append(last, text.end());
}

}  // namespace

Normalizer::Normalizer(NormalizationConfig cfg) : cfg_(std::move(cfg)) {
  commit_re_ = compile(cfg_.commit_id_pattern, "commit_id_pattern");
  issue_re_ = compile(cfg_.issue_id_pattern, "issue_id_pattern");
  check_placeholder(cfg_.commit_placeholder, "commit_placeholder");
  check_placeholder(cfg_.issue_placeholder, "issue_placeholder");
  if (cfg_.max_diff_bytes == 0) {
    throw InvalidPattern("max_diff_bytes must be positive");
  }
}

SizeCheck Normalizer::check_size(const CommitRecord& record) const {
  return record.diff_bytes > cfg_.max_diff_bytes ? SizeCheck::kReject
                                                 : SizeCheck::kPass;
}

std::string Normalizer::replace_commit_ids(std::string_view text) const {
  std::string out;
  out.reserve(text.size());
  replace_all(text, commit_re_, cfg_.commit_placeholder, out);
  return out;
}

std::string Normalizer::replace_ids(std::string_view text) const {
  std::string issues_done;
  replace_all(text, issue_re_, cfg_.issue_placeholder, issues_done);

  // Commit ids only in the stretches between issue placeholders, so a
  // placeholder is never matched again.
  std::string out;
  out.reserve(issues_done.size());
  const std::string_view all = issues_done;
  const std::string& ph = cfg_.issue_placeholder;
  std::size_t pos = 0;
  while (true) {
    const auto hit = all.find(ph, pos);
    const auto stop = hit == std::string_view::npos ? all.size() : hit;
    replace_all(all.substr(pos, stop - pos), commit_re_,
                cfg_.commit_placeholder, out);
    if (hit == std::string_view::npos) break;
    out += ph;
    pos = hit + ph.size();
  }
  return out;
}

std::string Normalizer::normalize_diff(const UnifiedDiff& diff) const {
  std::string out;
  for (const auto& f : diff.files) {
    for (const auto& h : f.hunks) {
      out += "@@\n";
      for (const auto& l : h.lines) {
        out += marker_of(l.kind);
        out += replace_commit_ids(to_lower_ascii(l.content));
        out += '\n';
      }
    }
  }
  return out;
}

std::string Normalizer::normalize_message(std::string_view message) const {
  const std::string lowered = to_lower_ascii(trim(message));
  std::string_view first = lowered;
  const auto stop = first.find_first_of(".!?\n");
  if (stop != std::string_view::npos) {
    first = first.substr(0, first[stop] == '\n' ? stop : stop + 1);
  }
  std::string out(trim(replace_ids(first)));
  if (out.empty()) throw EmptyMessage();
  return out;
}

}  // namespace todomine
