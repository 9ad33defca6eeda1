#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "todomine/commit.hpp"
#include "todomine/extract.hpp"
#include "todomine/label.hpp"

namespace todomine {

enum class SplitName { kTrain, kVal, kTest };

std::string_view to_string(SplitName s);
SplitName parse_split_name(std::string_view s);

struct TripleRecord {
  std::string repo;
  std::string commit_id;
  Language language = Language::kPython;
  Label label = Label::kPositive;  // never kDiscard
  std::optional<SplitName> split;
  std::string todo_comment;
  std::string code_change;
  std::string commit_msg;

  // Removed for positives, Equal for negatives.
  LineKind scope() const;

  friend bool operator==(const TripleRecord&, const TripleRecord&) = default;
};

// Throws Error when the triple labels as Discard.
TripleRecord make_record(const Triple& triple);

struct RecordKey {
  std::string repo;
  std::string commit_id;
  Language language = Language::kPython;

  friend auto operator<=>(const RecordKey&, const RecordKey&) = default;
};

RecordKey key_of(const TripleRecord& r);

// Canonical order: (repo, commit_id, language), then the remaining fields.
void sort_records(std::vector<TripleRecord>& records);

// Drops records whose (todo_comment, code_change) already appeared earlier
// in the given order. Returns the number removed.
std::size_t dedup_records(std::vector<TripleRecord>& records);

// splitmix64. Fixed and portable so a seed names the same split everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t state_;
};

// Fisher-Yates, walking from the back.
template <typename T>
void seeded_shuffle(std::vector<T>& items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(items[i - 1], items[j]);
  }
}

struct SplitSizes {
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;
  friend bool operator==(const SplitSizes&, const SplitSizes&) = default;
};

// train = floor(0.8 n); val = floor((n - train) / 2); test takes the rest.
SplitSizes split_sizes(std::size_t n);

struct DatasetSplit {
  std::uint64_t seed = 0;
  SplitSizes sizes;
  // Sorted by key.
  std::vector<std::pair<RecordKey, SplitName>> assignment;

  std::optional<SplitName> lookup(const RecordKey& key) const;
};

// Sorts a copy canonically, shuffles it with SplitMix64(seed) and cuts it by
// split_sizes. Input order does not matter. Throws EmptyDataset, or Error on
// duplicate keys.
DatasetSplit split(std::span<const TripleRecord> records, std::uint64_t seed);

// Sets TripleRecord::split from the assignment; throws Error for records the
// split does not know.
void apply_split(std::vector<TripleRecord>& records, const DatasetSplit& s);

// Splits each language independently with the same seed.
void split_by_language(std::vector<TripleRecord>& records, std::uint64_t seed);

struct LanguageCounts {
  std::uint64_t todo_commits = 0;
  std::uint64_t positive = 0;
  std::uint64_t negative = 0;
  std::uint64_t train = 0;
  std::uint64_t val = 0;
  std::uint64_t test = 0;
  friend bool operator==(const LanguageCounts&, const LanguageCounts&) = default;
};

struct CountsReport {
  LanguageCounts python;
  LanguageCounts java;

  LanguageCounts& at(Language lang) {
    return lang == Language::kPython ? python : java;
  }
  const LanguageCounts& at(Language lang) const {
    return lang == Language::kPython ? python : java;
  }
  friend bool operator==(const CountsReport&, const CountsReport&) = default;
};

CountsReport stats(std::span<const TripleRecord> records,
                   const std::map<Language, std::uint64_t>& todo_commits);

// Python block then Java block, rows in the order of the published table
// with val and test on separate rows.
std::string render_stats_table(const CountsReport& report);
std::string stats_to_json(const CountsReport& report);

struct ReviewRow {
  std::string repo;
  std::string commit_id;
  Language language = Language::kPython;
  Label label = Label::kPositive;
  std::string code_change;
  std::string todo_comment;
  std::string commit_msg;
  std::string verdict;  // left blank for the reviewer
};

struct ReviewSheet {
  std::vector<ReviewRow> rows;
};

// n_pos positives then n_neg negatives, drawn without replacement.
ReviewSheet sample_for_review(std::span<const TripleRecord> records,
                              std::size_t n_pos, std::size_t n_neg,
                              std::uint64_t seed);

std::string review_sheet_csv(const ReviewSheet& sheet);

// One JSON object per line; fields in the order repo, commit_id, language,
// label, split, todo_comment, code_change, commit_msg.
std::string record_to_json_line(const TripleRecord& r);
TripleRecord record_from_json_line(std::string_view line, std::size_t line_no);

void write_records(std::span<const TripleRecord> records, std::ostream& out);
std::vector<TripleRecord> read_records(std::istream& in);
void write_records(std::span<const TripleRecord> records,
                   const std::filesystem::path& path);
std::vector<TripleRecord> read_records(const std::filesystem::path& path);

// Unlabeled triples as produced by `extract`: repo, commit_id, language,
// scope, todo_comment, code_change, commit_msg.
std::string triple_to_json_line(const Triple& t);
Triple triple_from_json_line(std::string_view line, std::size_t line_no);
std::vector<Triple> read_triples(std::istream& in);

}  // namespace todomine
