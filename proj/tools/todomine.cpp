// todomine: mine git histories for TODO comments and build labeled
// <code_change, todo_comment, commit_msg> datasets.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "todomine/commit.hpp"
#include "todomine/config.hpp"
#include "todomine/dataset.hpp"
#include "todomine/errors.hpp"
#include "todomine/patch_archive.hpp"
#include "todomine/pipeline.hpp"

namespace fs = std::filesystem;
using namespace todomine;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitPartial = 2;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  bool dedup = false;
  bool resume = false;
  bool strict = false;
  std::string lang;
  std::string output;
};

PipelineConfig build_config(const CommonFlags& f, const std::string& repos) {
  PipelineConfig cfg;
  if (!f.config.empty()) cfg = load_config(f.config);
  if (!repos.empty()) cfg.repo_list_path = repos;
  if (f.seed) cfg.seed = *f.seed;
  if (f.workers) cfg.worker_count = *f.workers;
  if (f.dedup) cfg.dedup = true;
  if (f.resume) cfg.resume = true;
  if (f.strict) cfg.strict_ingest = cfg.strict_diff = true;
  if (!f.lang.empty()) cfg.language = parse_language(f.lang);
  if (!f.output.empty()) cfg.output_dir = f.output;
  return cfg;
}

// Writes to `path`, or stdout when it is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw IoFailure("cannot write " + path);
}

std::vector<TripleRecord> load_records(const std::string& path) {
  if (path.empty() || path == "-") return read_records(std::cin);
  return read_records(fs::path(path));
}

void print_counters(const StageCounters& c) {
  std::cerr << "todo_commits=" << c.todo_commits
            << " oversized=" << c.oversized
            << " malformed_diff=" << c.skipped_malformed_diff
            << " empty_message=" << c.skipped_empty_message
            << " no_todo=" << c.skipped_no_todo
            << " multi_todo=" << c.skipped_multi_todo << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_st("todomine"));
  spdlog::set_pattern("[%l] %v");

  CLI::App app{"Mine TODO comments from git history into labeled datasets"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Log per-repository progress");

  CommonFlags flags;
  std::string repos;
  auto* harvest = app.add_subcommand("harvest", "Run the full pipeline");
  harvest->add_option("--config", flags.config, "INI config file");
  harvest->add_option("--repos", repos, "Repository list (overrides config)");
  harvest->add_option("--seed", flags.seed, "Split seed");
  harvest->add_option("--workers", flags.workers, "Worker threads")
      ->check(CLI::PositiveNumber);
  harvest->add_flag("--dedup", flags.dedup,
                    "Drop later records with the same comment and change");
  harvest->add_flag("--resume", flags.resume, "Continue the run in --output");
  harvest->add_flag("--strict", flags.strict,
                    "Fail a repository on unreadable commits or bad hunks");
  harvest->add_option("--lang", flags.lang, "Only mine this language")
      ->check(CLI::IsMember({"python", "java"}));
  harvest->add_option("--output", flags.output, "Output directory");

  std::string repo_path, lang = "python", output, input;
  std::string ex_config;
  bool ex_strict = false;
  auto* extract = app.add_subcommand("extract", "One repository to triples");
  extract->add_option("--repo", repo_path, "Git repository or patch archive")
      ->required();
  extract->add_option("--lang", lang)->check(CLI::IsMember({"python", "java"}));
  extract->add_option("--config", ex_config, "Config with a [normalize] section");
  extract->add_flag("--strict", ex_strict);
  extract->add_option("--output", output, "Triples file (default stdout)");

  auto* label = app.add_subcommand("label", "Label triples, dropping discards");
  label->add_option("--input", input, "Triples file (default stdin)");
  label->add_option("--output", output, "Records file (default stdout)");

  std::uint64_t seed = 0;
  auto* split_cmd = app.add_subcommand("split", "Assign train/val/test");
  split_cmd->add_option("--input", input, "Records file (default stdin)");
  split_cmd->add_option("--seed", seed);
  split_cmd->add_option("--output", output, "Records file (default stdout)");

  std::uint64_t py_commits = 0, java_commits = 0;
  bool as_json = false;
  auto* stats_cmd = app.add_subcommand("stats", "Count table for a dataset");
  stats_cmd->add_option("--input", input, "Records file (default stdin)");
  stats_cmd->add_option("--todo-commits-python", py_commits);
  stats_cmd->add_option("--todo-commits-java", java_commits);
  stats_cmd->add_flag("--json", as_json, "Machine-readable counts");
  stats_cmd->add_option("--output", output);

  std::size_t n_pos = 100, n_neg = 100;
  auto* review = app.add_subcommand("sample-review", "Manual-check sheet (CSV)");
  review->add_option("--input", input, "Records file (default stdin)");
  review->add_option("--pos", n_pos, "Positive rows");
  review->add_option("--neg", n_neg, "Negative rows");
  review->add_option("--seed", seed);
  review->add_option("--output", output, "CSV file (default stdout)");

  auto* archive = app.add_subcommand("archive", "Repository to patch archive");
  archive->add_option("--repo", repo_path)->required();
  archive->add_option("--output", output)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }
  spdlog::set_level(verbose ? spdlog::level::info : spdlog::level::warn);

  try {
    if (*harvest) {
      const auto manifest = run_pipeline(build_config(flags, repos));
      for (const auto l : {Language::kPython, Language::kJava}) {
        const auto& t = manifest.totals(l);
        std::cerr << to_string(l) << ": " << t.counters.todo_commits
                  << " todo commits, " << t.counters.positive << " positive, "
                  << t.counters.negative << " negative\n";
      }
      return manifest.any_failed() ? kExitPartial : kExitOk;
    }

    if (*extract) {
      NormalizationConfig ncfg;
      if (!ex_config.empty()) ncfg = load_config(ex_config).normalize;
      const Normalizer normalizer(ncfg);
      RepoSource src{repo_path, parse_language(lang), 0};
      const auto report = extract_repository(
          src, normalizer, IngestOptions{ex_strict},
          ex_strict ? ParseMode::kStrict : ParseMode::kLenient);
      std::string text;
      for (const auto& t : report.triples) text += triple_to_json_line(t) + "\n";
      emit(output, text);
      print_counters(report.counters);
      return kExitOk;
    }

    if (*label) {
      std::vector<Triple> triples;
      if (input.empty() || input == "-") {
        triples = read_triples(std::cin);
      } else {
        std::ifstream in(input, std::ios::binary);
        if (!in) throw IoFailure("cannot open " + input);
        triples = read_triples(in);
      }
      std::ostringstream out;
      std::size_t discarded = 0;
      std::vector<TripleRecord> records;
      for (const auto& t : triples) {
        if (label_triple(t.scope) == Label::kDiscard) {
          ++discarded;
          continue;
        }
        records.push_back(make_record(t));
      }
      write_records(records, out);
      emit(output, out.str());
      std::cerr << records.size() << " labeled, " << discarded
                << " discarded (added TODOs)\n";
      return kExitOk;
    }

    if (*split_cmd) {
      auto records = load_records(input);
      sort_records(records);
      split_by_language(records, seed);
      std::ostringstream out;
      write_records(records, out);
      emit(output, out.str());
      return kExitOk;
    }

    if (*stats_cmd) {
      const auto records = load_records(input);
      const auto report = stats(records, {{Language::kPython, py_commits},
                                          {Language::kJava, java_commits}});
      emit(output, as_json ? stats_to_json(report) : render_stats_table(report));
      return kExitOk;
    }

    if (*review) {
      const auto records = load_records(input);
      emit(output, review_sheet_csv(sample_for_review(records, n_pos, n_neg, seed)));
      return kExitOk;
    }

    if (*archive) {
      RepoSource src{repo_path, Language::kPython, 0};
      const auto commits = list_commits(src);
      write_patch_archive(output, commits);
      std::cerr << commits.size() << " commits archived\n";
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidPattern& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
