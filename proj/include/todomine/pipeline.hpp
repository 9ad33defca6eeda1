#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "todomine/commit.hpp"
#include "todomine/config.hpp"
#include "todomine/dataset.hpp"
#include "todomine/diff.hpp"
#include "todomine/extract.hpp"
#include "todomine/normalize.hpp"

namespace todomine {

inline constexpr std::string_view kToolVersion = "0.1.0";

// What happened to one commit, in pipeline order.
enum class CommitOutcome {
  kNotTodoRelated,
  kOversized,
  kMalformedDiff,
  kEmptyMessage,
  kNoTodo,
  kMultipleTodos,
  kTriple,  // extracted, not labeled yet
  kDiscardedAdded,
  kPositive,
  kNegative,
};

struct CommitResult {
  CommitOutcome outcome = CommitOutcome::kNotTodoRelated;
  std::optional<Triple> triple;
};

// TODO filter, size cap, parse, message normalization and triple split for
// one commit. Stops at kTriple; labeling is separate. A malformed hunk in
// strict mode propagates as an exception.
CommitResult extract_commit(const CommitRecord& commit, Language language,
                            const Normalizer& normalizer, ParseMode mode);

// extract_commit followed by labeling.
CommitResult process_commit(const CommitRecord& commit, Language language,
                            const Normalizer& normalizer, ParseMode mode);

struct StageCounters {
  std::uint64_t todo_commits = 0;
  std::uint64_t skipped_multi_todo = 0;
  std::uint64_t skipped_no_todo = 0;
  std::uint64_t skipped_empty_message = 0;
  std::uint64_t skipped_malformed_diff = 0;
  std::uint64_t oversized = 0;
  std::uint64_t discarded_added = 0;
  std::uint64_t positive = 0;
  std::uint64_t negative = 0;

  void record(CommitOutcome outcome);
  StageCounters& operator+=(const StageCounters& other);
  // todo_commits == positive + negative + every skip counter.
  bool conserved() const;
  friend bool operator==(const StageCounters&, const StageCounters&) = default;
};

enum class RepoStatus { kPending, kDone, kFailed };

std::string_view to_string(RepoStatus s);

struct RepoEntry {
  RepoSource source;
  RepoStatus status = RepoStatus::kPending;
  StageCounters counters;
  std::string error;
  friend bool operator==(const RepoEntry&, const RepoEntry&) = default;
};

struct LanguageTotals {
  StageCounters counters;
  std::uint64_t duplicates_removed = 0;
  friend bool operator==(const LanguageTotals&, const LanguageTotals&) = default;
};

struct RunManifest {
  std::string tool_version{kToolVersion};
  std::string config_digest;
  std::vector<RepoEntry> repos;
  LanguageTotals python;
  LanguageTotals java;

  LanguageTotals& totals(Language lang) {
    return lang == Language::kPython ? python : java;
  }
  const LanguageTotals& totals(Language lang) const {
    return lang == Language::kPython ? python : java;
  }
  bool any_failed() const;
  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

std::string manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(std::string_view text);
RunManifest read_manifest(const std::filesystem::path& file);

// Output layout inside PipelineConfig::output_dir.
struct OutputPaths {
  std::filesystem::path root;
  std::filesystem::path dataset() const { return root / "dataset.jsonl"; }
  std::filesystem::path split_file(SplitName s) const {
    return root / (std::string(to_string(s)) + ".jsonl");
  }
  std::filesystem::path stats_table() const { return root / "stats.txt"; }
  std::filesystem::path stats_json() const { return root / "stats.json"; }
  std::filesystem::path manifest() const { return root / "manifest.json"; }
  std::filesystem::path shards() const { return root / "shards"; }
};

// Full harvest: ingest every listed repository on a pool of worker_count
// threads, one shard per repository, then merge single-threaded in key
// order, split and write datasets, stats and manifest. The outputs do not
// depend on worker_count. With config.resume set, continues the manifest in
// output_dir instead.
RunManifest run_pipeline(const PipelineConfig& config);

// Reprocesses pending and failed repositories from `prior`, keeps done ones,
// and redoes the merge. Throws ManifestConfigMismatch.
RunManifest resume(const PipelineConfig& config, const RunManifest& prior);

// Every triple of one repository, Added-scope ones included.
struct ExtractReport {
  std::vector<Triple> triples;
  StageCounters counters;  // labeling counters stay zero
};
ExtractReport extract_repository(const RepoSource& source,
                                 const Normalizer& normalizer,
                                 const IngestOptions& ingest, ParseMode mode);

}  // namespace todomine
