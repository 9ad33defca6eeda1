#include "todomine/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "todomine/errors.hpp"
#include "todomine/label.hpp"
#include "todomine/text.hpp"

namespace todomine {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json counters_to_json(const StageCounters& c) {
  return ordered_json{{"todo_commits", c.todo_commits},
                      {"skipped_multi_todo", c.skipped_multi_todo},
                      {"skipped_no_todo", c.skipped_no_todo},
                      {"skipped_empty_message", c.skipped_empty_message},
                      {"skipped_malformed_diff", c.skipped_malformed_diff},
                      {"oversized", c.oversized},
                      {"discarded_added", c.discarded_added},
                      {"positive", c.positive},
                      {"negative", c.negative}};
}

StageCounters counters_from_json(const ordered_json& j) {
  StageCounters c;
  c.todo_commits = j.at("todo_commits").get<std::uint64_t>();
  c.skipped_multi_todo = j.at("skipped_multi_todo").get<std::uint64_t>();
  c.skipped_no_todo = j.at("skipped_no_todo").get<std::uint64_t>();
  c.skipped_empty_message = j.at("skipped_empty_message").get<std::uint64_t>();
  c.skipped_malformed_diff =
      j.at("skipped_malformed_diff").get<std::uint64_t>();
  c.oversized = j.at("oversized").get<std::uint64_t>();
  c.discarded_added = j.at("discarded_added").get<std::uint64_t>();
  c.positive = j.at("positive").get<std::uint64_t>();
  c.negative = j.at("negative").get<std::uint64_t>();
  return c;
}

RepoStatus parse_status(std::string_view s) {
  if (s == "pending") return RepoStatus::kPending;
  if (s == "done") return RepoStatus::kDone;
  if (s == "failed") return RepoStatus::kFailed;
  throw Error("unknown repo status '" + std::string(s) + "'");
}

void write_file_atomically(const fs::path& path, std::string_view contents) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.close();
    if (!out) throw IoFailure("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoFailure("cannot replace " + path.string() + ": " + ec.message());
}

fs::path shard_path(const OutputPaths& out, const RepoSource& src) {
  return out.shards() / (std::to_string(src.star_rank) + ".jsonl");
}

struct RepoResult {
  std::vector<TripleRecord> records;
  StageCounters counters;
};

RepoResult process_repository(const RepoSource& source,
                              const Normalizer& normalizer,
                              const IngestOptions& ingest, ParseMode mode) {
  RepoResult result;
  for (const auto& commit : list_commits(source, ingest)) {
    auto r = process_commit(commit, source.language, normalizer, mode);
    result.counters.record(r.outcome);
    if (r.outcome == CommitOutcome::kPositive ||
        r.outcome == CommitOutcome::kNegative) {
      result.records.push_back(make_record(*r.triple));
    }
  }
  sort_records(result.records);
  return result;
}

void recompute_totals(RunManifest& m) {
  m.python.counters = {};
  m.java.counters = {};
  for (const auto& e : m.repos) {
    if (e.status == RepoStatus::kDone) {
      m.totals(e.source.language).counters += e.counters;
    }
  }
}

class Run {
 public:
  Run(const PipelineConfig& config, RunManifest manifest)
      : config_(config),
        out_{config.output_dir},
        manifest_(std::move(manifest)),
        normalizer_(config.normalize) {}

  RunManifest execute() {
    std::error_code ec;
    fs::create_directories(out_.shards(), ec);
    if (ec) {
      throw IoFailure("cannot create " + out_.shards().string() + ": " +
                      ec.message());
    }
    recompute_totals(manifest_);
    save_manifest();

    std::vector<std::size_t> queue;
    for (std::size_t i = 0; i < manifest_.repos.size(); ++i) {
      if (manifest_.repos[i].status != RepoStatus::kDone) queue.push_back(i);
    }

    std::atomic<std::size_t> next{0};
    auto work = [&] {
      while (true) {
        const std::size_t slot = next.fetch_add(1);
        if (slot >= queue.size()) return;
        run_repo(queue[slot]);
      }
    };
    const std::size_t threads = std::min(config_.worker_count, queue.size());
    {
      std::vector<std::jthread> pool;
      for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
    }

    merge();
    save_manifest();
    return manifest_;
  }

 private:
  void run_repo(std::size_t index) {
    // Sources are never written while workers run.
    const RepoSource& src = manifest_.repos[index].source;
    const IngestOptions ingest{config_.strict_ingest};
    const ParseMode mode =
        config_.strict_diff ? ParseMode::kStrict : ParseMode::kLenient;

    RepoResult result;
    std::string error;
    try {
      result = process_repository(src, normalizer_, ingest, mode);
      std::ostringstream shard;
      write_records(result.records, shard);
      write_file_atomically(shard_path(out_, src), shard.str());
    } catch (const std::exception& e) {
      error = e.what();
    }

    std::lock_guard lock(mu_);
    RepoEntry& entry = manifest_.repos[index];
    if (error.empty()) {
      entry.status = RepoStatus::kDone;
      entry.counters = result.counters;
      entry.error.clear();
      spdlog::info("{}: {} todo commits, {} positive, {} negative", src.path,
                   result.counters.todo_commits, result.counters.positive,
                   result.counters.negative);
    } else {
      entry.status = RepoStatus::kFailed;
      entry.counters = {};
      entry.error = error;
      spdlog::error("{}: {}", src.path, error);
    }
    recompute_totals(manifest_);
    save_manifest();
  }

  void merge() {
    std::vector<TripleRecord> records;
    for (const auto& e : manifest_.repos) {
      if (e.status != RepoStatus::kDone) continue;
      auto shard = read_records(shard_path(out_, e.source));
      records.insert(records.end(), std::make_move_iterator(shard.begin()),
                     std::make_move_iterator(shard.end()));
    }
    sort_records(records);

    manifest_.python.duplicates_removed = 0;
    manifest_.java.duplicates_removed = 0;
    if (config_.dedup) {
      std::vector<TripleRecord> kept;
      for (const auto lang : {Language::kPython, Language::kJava}) {
        std::vector<TripleRecord> subset;
        for (const auto& r : records) {
          if (r.language == lang) subset.push_back(r);
        }
        manifest_.totals(lang).duplicates_removed = dedup_records(subset);
        kept.insert(kept.end(), subset.begin(), subset.end());
      }
      records = std::move(kept);
      sort_records(records);
    }

    split_by_language(records, config_.seed);

    write_records(records, out_.dataset());
    for (const auto s : {SplitName::kTrain, SplitName::kVal, SplitName::kTest}) {
      std::vector<TripleRecord> part;
      for (const auto& r : records) {
        if (r.split == s) part.push_back(r);
      }
      write_records(part, out_.split_file(s));
    }

    const auto report =
        stats(records, {{Language::kPython, manifest_.python.counters.todo_commits},
                        {Language::kJava, manifest_.java.counters.todo_commits}});
    write_file_atomically(out_.stats_table(), render_stats_table(report));
    write_file_atomically(out_.stats_json(), stats_to_json(report));
  }

  void save_manifest() {
    write_file_atomically(out_.manifest(), manifest_to_json(manifest_));
  }

  const PipelineConfig& config_;
  OutputPaths out_;
  RunManifest manifest_;
  Normalizer normalizer_;
  std::mutex mu_;
};

}  // namespace

CommitResult extract_commit(const CommitRecord& commit, Language language,
                            const Normalizer& normalizer, ParseMode mode) {
  if (!is_todo_related(commit.diff_text)) return {};
  if (normalizer.check_size(commit) == SizeCheck::kReject) {
    return {CommitOutcome::kOversized, std::nullopt};
  }

  UnifiedDiff diff;
  try {
    diff = parse_unified_diff(commit.diff_text, mode);
  } catch (const MalformedHunkHeader&) {
    if (mode == ParseMode::kStrict) throw;
    return {CommitOutcome::kMalformedDiff, std::nullopt};
  }

  std::string msg;
  try {
    msg = normalizer.normalize_message(sanitize_utf8(commit.message));
  } catch (const EmptyMessage&) {
    return {CommitOutcome::kEmptyMessage, std::nullopt};
  }

  auto result =
      split_triple(diff, std::move(msg), CommentSyntax::for_language(language),
                   {commit.repo, commit.commit_id, language}, normalizer);
  if (const auto* skip = std::get_if<Skip>(&result)) {
    return {skip->reason == SkipReason::kNoTodo ? CommitOutcome::kNoTodo
                                                : CommitOutcome::kMultipleTodos,
            std::nullopt};
  }
  return {CommitOutcome::kTriple, std::get<Triple>(std::move(result))};
}

CommitResult process_commit(const CommitRecord& commit, Language language,
                            const Normalizer& normalizer, ParseMode mode) {
  auto r = extract_commit(commit, language, normalizer, mode);
  if (r.outcome != CommitOutcome::kTriple) return r;
  switch (label_triple(r.triple->scope)) {
    case Label::kPositive:
      r.outcome = CommitOutcome::kPositive;
      break;
    case Label::kNegative:
      r.outcome = CommitOutcome::kNegative;
      break;
    case Label::kDiscard:
      r.outcome = CommitOutcome::kDiscardedAdded;
      break;
  }
  return r;
}

void StageCounters::record(CommitOutcome outcome) {
  if (outcome == CommitOutcome::kNotTodoRelated) return;
  ++todo_commits;
  switch (outcome) {
    case CommitOutcome::kOversized:
      ++oversized;
      break;
    case CommitOutcome::kMalformedDiff:
      ++skipped_malformed_diff;
      break;
    case CommitOutcome::kEmptyMessage:
      ++skipped_empty_message;
      break;
    case CommitOutcome::kNoTodo:
      ++skipped_no_todo;
      break;
    case CommitOutcome::kMultipleTodos:
      ++skipped_multi_todo;
      break;
    case CommitOutcome::kDiscardedAdded:
      ++discarded_added;
      break;
    case CommitOutcome::kPositive:
      ++positive;
      break;
    case CommitOutcome::kNegative:
      ++negative;
      break;
    case CommitOutcome::kTriple:
    case CommitOutcome::kNotTodoRelated:
      break;
  }
}

StageCounters& StageCounters::operator+=(const StageCounters& o) {
  todo_commits += o.todo_commits;
  skipped_multi_todo += o.skipped_multi_todo;
  skipped_no_todo += o.skipped_no_todo;
  skipped_empty_message += o.skipped_empty_message;
  skipped_malformed_diff += o.skipped_malformed_diff;
  oversized += o.oversized;
  discarded_added += o.discarded_added;
  positive += o.positive;
  negative += o.negative;
  return *this;
}

bool StageCounters::conserved() const {
  return todo_commits == positive + negative + skipped_multi_todo +
                             skipped_no_todo + skipped_empty_message +
                             skipped_malformed_diff + oversized +
                             discarded_added;
}

std::string_view to_string(RepoStatus s) {
  switch (s) {
    case RepoStatus::kPending:
      return "pending";
    case RepoStatus::kDone:
      return "done";
    case RepoStatus::kFailed:
      return "failed";
  }
  return "?";
}

bool RunManifest::any_failed() const {
  return std::any_of(repos.begin(), repos.end(), [](const RepoEntry& e) {
    return e.status == RepoStatus::kFailed;
  });
}

std::string manifest_to_json(const RunManifest& m) {
  ordered_json j;
  j["tool_version"] = m.tool_version;
  j["config_digest"] = m.config_digest;
  ordered_json totals;
  for (const auto lang : {Language::kPython, Language::kJava}) {
    auto t = counters_to_json(m.totals(lang).counters);
    t["duplicates_removed"] = m.totals(lang).duplicates_removed;
    totals[std::string(to_string(lang))] = std::move(t);
  }
  j["totals"] = std::move(totals);
  ordered_json repos = ordered_json::array();
  for (const auto& e : m.repos) {
    repos.push_back(ordered_json{{"star_rank", e.source.star_rank},
                                 {"language", to_string(e.source.language)},
                                 {"path", e.source.path},
                                 {"status", to_string(e.status)},
                                 {"error", e.error},
                                 {"counters", counters_to_json(e.counters)}});
  }
  j["repos"] = std::move(repos);
  return j.dump(2, ' ', false, ordered_json::error_handler_t::replace) + "\n";
}

RunManifest manifest_from_json(std::string_view text) {
  try {
    const auto j = ordered_json::parse(text);
    RunManifest m;
    m.tool_version = j.at("tool_version").get<std::string>();
    m.config_digest = j.at("config_digest").get<std::string>();
    for (const auto lang : {Language::kPython, Language::kJava}) {
      const auto& t = j.at("totals").at(std::string(to_string(lang)));
      m.totals(lang).counters = counters_from_json(t);
      m.totals(lang).duplicates_removed =
          t.at("duplicates_removed").get<std::uint64_t>();
    }
    for (const auto& r : j.at("repos")) {
      RepoEntry e;
      e.source.star_rank = r.at("star_rank").get<std::uint64_t>();
      e.source.language = parse_language(r.at("language").get<std::string>());
      e.source.path = r.at("path").get<std::string>();
      e.status = parse_status(r.at("status").get<std::string>());
      e.error = r.at("error").get<std::string>();
      e.counters = counters_from_json(r.at("counters"));
      m.repos.push_back(std::move(e));
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("unreadable manifest: ") + e.what());
  }
}

RunManifest read_manifest(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot read manifest " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return manifest_from_json(ss.str());
}

RunManifest run_pipeline(const PipelineConfig& config) {
  validate(config);
  const OutputPaths out{config.output_dir};
  std::error_code ec;
  if (config.resume && fs::exists(out.manifest(), ec)) {
    return resume(config, read_manifest(out.manifest()));
  }
  if (fs::exists(out.root, ec) && !fs::is_empty(out.root, ec)) {
    throw ConfigError("output directory " + out.root.string() +
                      " is not empty (pass --resume to continue a run)");
  }

  RunManifest m;
  m.config_digest = config_digest(config);
  std::set<std::string> ids;
  for (auto& src : read_repo_list(config.repo_list_path)) {
    if (config.language && src.language != *config.language) continue;
    if (!ids.insert(repo_id_for(src.path)).second) {
      throw ConfigError("two listed repositories share the name " +
                        repo_id_for(src.path));
    }
    RepoEntry entry;
    entry.source = std::move(src);
    m.repos.push_back(std::move(entry));
  }
  return Run(config, std::move(m)).execute();
}

RunManifest resume(const PipelineConfig& config, const RunManifest& prior) {
  validate(config);
  const auto digest = config_digest(config);
  if (prior.config_digest != digest) {
    throw ManifestConfigMismatch(prior.config_digest, digest);
  }
  const OutputPaths out{config.output_dir};
  RunManifest m = prior;
  m.tool_version = std::string(kToolVersion);
  for (auto& e : m.repos) {
    std::error_code ec;
    if (e.status == RepoStatus::kDone &&
        fs::exists(shard_path(out, e.source), ec)) {
      continue;
    }
    e.status = RepoStatus::kPending;
    e.counters = {};
    e.error.clear();
  }
  return Run(config, std::move(m)).execute();
}

ExtractReport extract_repository(const RepoSource& source,
                                 const Normalizer& normalizer,
                                 const IngestOptions& ingest, ParseMode mode) {
  ExtractReport report;
  for (const auto& commit : list_commits(source, ingest)) {
    auto r = extract_commit(commit, source.language, normalizer, mode);
    report.counters.record(r.outcome);
    if (r.triple) report.triples.push_back(std::move(*r.triple));
  }
  return report;
}

}  // namespace todomine
