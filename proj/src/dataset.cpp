#include "todomine/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "todomine/errors.hpp"

namespace todomine {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kRecordFields[] = {
    "repo",         "commit_id",   "language",  "label",
    "split",        "todo_comment", "code_change", "commit_msg"};

constexpr std::string_view kTripleFields[] = {
    "repo",         "commit_id",   "language",  "scope",
    "todo_comment", "code_change", "commit_msg"};

std::string dump_line(const ordered_json& j) {
  // Records are UTF-8 by the time they get here; replace keeps a stray byte
  // from aborting a whole run.
  return j.dump(-1, ' ', false, ordered_json::error_handler_t::replace);
}

ordered_json parse_object(std::string_view line, std::size_t line_no,
                          std::span<const std::string_view> fields) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const ordered_json::parse_error& e) {
    throw SchemaViolation(line_no, e.what());
  }
  if (!j.is_object()) throw SchemaViolation(line_no, "not an object");
  if (j.size() != fields.size()) {
    throw SchemaViolation(line_no, "expected " + std::to_string(fields.size()) +
                                       " fields, found " +
                                       std::to_string(j.size()));
  }
  for (const auto f : fields) {
    if (!j.contains(std::string(f))) {
      throw SchemaViolation(line_no, "missing field '" + std::string(f) + "'");
    }
  }
  return j;
}

std::string get_string(const ordered_json& j, std::string_view field,
                       std::size_t line_no) {
  const auto& v = j.at(std::string(field));
  if (!v.is_string()) {
    throw SchemaViolation(line_no,
                          "field '" + std::string(field) + "' is not a string");
  }
  return v.get<std::string>();
}

template <typename F>
auto parse_enum(const ordered_json& j, std::string_view field,
                std::size_t line_no, F parse) {
  const auto text = get_string(j, field, line_no);
  try {
    return parse(text);
  } catch (const Error& e) {
    throw SchemaViolation(line_no, e.what());
  }
}

LineKind parse_scope(std::string_view s) {
  if (s == "added") return LineKind::kAdded;
  if (s == "removed") return LineKind::kRemoved;
  if (s == "equal") return LineKind::kEqual;
  throw Error("unknown scope '" + std::string(s) + "'");
}

std::string with_thousands(std::uint64_t v) {
  std::string digits = std::to_string(v);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i != 0 && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(s);
  }
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

auto full_tuple(const TripleRecord& r) {
  return std::tie(r.repo, r.commit_id, r.language, r.label, r.split,
                  r.todo_comment, r.code_change, r.commit_msg);
}

}  // namespace

std::string_view to_string(SplitName s) {
  switch (s) {
    case SplitName::kTrain:
      return "train";
    case SplitName::kVal:
      return "val";
    case SplitName::kTest:
      return "test";
  }
  return "?";
}

SplitName parse_split_name(std::string_view s) {
  if (s == "train") return SplitName::kTrain;
  if (s == "val") return SplitName::kVal;
  if (s == "test") return SplitName::kTest;
  throw Error("unknown split '" + std::string(s) + "'");
}

LineKind TripleRecord::scope() const {
  return label == Label::kPositive ? LineKind::kRemoved : LineKind::kEqual;
}

TripleRecord make_record(const Triple& t) {
  const Label label = label_triple(t.scope);
  if (label == Label::kDiscard) {
    throw Error("discarded triples are never persisted");
  }
  TripleRecord r;
  r.repo = t.repo;
  r.commit_id = t.commit_id;
  r.language = t.language;
  r.label = label;
  r.todo_comment = t.todo_comment;
  r.code_change = t.code_change;
  r.commit_msg = t.commit_msg;
  return r;
}

RecordKey key_of(const TripleRecord& r) {
  return {r.repo, r.commit_id, r.language};
}

void sort_records(std::vector<TripleRecord>& records) {
  std::sort(records.begin(), records.end(),
            [](const TripleRecord& a, const TripleRecord& b) {
              return full_tuple(a) < full_tuple(b);
            });
}

std::size_t dedup_records(std::vector<TripleRecord>& records) {
  std::set<std::pair<std::string, std::string>> seen;
  const auto before = records.size();
  std::erase_if(records, [&](const TripleRecord& r) {
    return !seen.emplace(r.todo_comment, r.code_change).second;
  });
  return before - records.size();
}

SplitSizes split_sizes(std::size_t n) {
  SplitSizes s;
  s.train = n * 4 / 5;
  const std::size_t rest = n - s.train;
  s.val = rest / 2;
  s.test = rest - s.val;
  return s;
}

std::optional<SplitName> DatasetSplit::lookup(const RecordKey& key) const {
  const auto it = std::lower_bound(
      assignment.begin(), assignment.end(), key,
      [](const auto& entry, const RecordKey& k) { return entry.first < k; });
  if (it == assignment.end() || it->first != key) return std::nullopt;
  return it->second;
}

DatasetSplit split(std::span<const TripleRecord> records, std::uint64_t seed) {
  if (records.empty()) throw EmptyDataset();

  std::vector<RecordKey> keys;
  keys.reserve(records.size());
  for (const auto& r : records) keys.push_back(key_of(r));
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) {
    throw Error("split: two records share a (repo, commit_id, language) key");
  }

  SplitMix64 rng(seed);
  std::vector<std::size_t> order(keys.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  seeded_shuffle(order, rng);

  DatasetSplit out;
  out.seed = seed;
  out.sizes = split_sizes(keys.size());
  out.assignment.reserve(keys.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    SplitName name = SplitName::kTest;
    if (pos < out.sizes.train) {
      name = SplitName::kTrain;
    } else if (pos < out.sizes.train + out.sizes.val) {
      name = SplitName::kVal;
    }
    out.assignment.emplace_back(keys[order[pos]], name);
  }
  std::sort(out.assignment.begin(), out.assignment.end());
  return out;
}

void apply_split(std::vector<TripleRecord>& records, const DatasetSplit& s) {
  for (auto& r : records) {
    const auto name = s.lookup(key_of(r));
    if (!name) {
      throw Error("record " + r.repo + "@" + r.commit_id +
                  " is not part of the split");
    }
    r.split = *name;
  }
}

void split_by_language(std::vector<TripleRecord>& records,
                       std::uint64_t seed) {
  for (const auto lang : {Language::kPython, Language::kJava}) {
    std::vector<TripleRecord> subset;
    for (const auto& r : records) {
      if (r.language == lang) subset.push_back(r);
    }
    if (subset.empty()) continue;
    const auto s = split(subset, seed);
    for (auto& r : records) {
      if (r.language == lang) r.split = s.lookup(key_of(r));
    }
  }
}

CountsReport stats(std::span<const TripleRecord> records,
                   const std::map<Language, std::uint64_t>& todo_commits) {
  CountsReport report;
  for (const auto& [lang, n] : todo_commits) report.at(lang).todo_commits = n;
  for (const auto& r : records) {
    auto& c = report.at(r.language);
    if (r.label == Label::kPositive) ++c.positive;
    if (r.label == Label::kNegative) ++c.negative;
    if (!r.split) continue;
    switch (*r.split) {
      case SplitName::kTrain:
        ++c.train;
        break;
      case SplitName::kVal:
        ++c.val;
        break;
      case SplitName::kTest:
        ++c.test;
        break;
    }
  }
  return report;
}

std::string render_stats_table(const CountsReport& report) {
  struct Row {
    std::string_view lang;
    std::string_view stat;
    std::string count;
  };
  std::vector<Row> rows;
  for (const auto& [name, c] :
       {std::pair<std::string_view, const LanguageCounts*>{"Python",
                                                            &report.python},
        {"Java", &report.java}}) {
    rows.push_back({name, "# TODO Commits", with_thousands(c->todo_commits)});
    rows.push_back({name, "# Positive samples", with_thousands(c->positive)});
    rows.push_back({name, "# Negative samples", with_thousands(c->negative)});
    rows.push_back({name, "# Train Set", with_thousands(c->train)});
    rows.push_back({name, "# Val Set", with_thousands(c->val)});
    rows.push_back({name, "# Test Set", with_thousands(c->test)});
  }
  std::size_t width = 5;
  for (const auto& r : rows) width = std::max(width, r.count.size());

  std::ostringstream out;
  auto pad_right = [](std::string_view s, std::size_t w) {
    return std::string(s) + std::string(w > s.size() ? w - s.size() : 0, ' ');
  };
  auto pad_left = [](std::string_view s, std::size_t w) {
    return std::string(w > s.size() ? w - s.size() : 0, ' ') + std::string(s);
  };
  out << "| " << pad_right("Language", 8) << " | "
      << pad_right("Statistic", 18) << " | " << pad_left("Count", width)
      << " |\n";
  out << "|" << std::string(10, '-') << "|" << std::string(20, '-') << "|"
      << std::string(width + 2, '-') << "|\n";
  for (const auto& r : rows) {
    out << "| " << pad_right(r.lang, 8) << " | " << pad_right(r.stat, 18)
        << " | " << pad_left(r.count, width) << " |\n";
  }
  return std::move(out).str();
}

std::string stats_to_json(const CountsReport& report) {
  ordered_json j;
  for (const auto lang : {Language::kPython, Language::kJava}) {
    const auto& c = report.at(lang);
    j[std::string(to_string(lang))] = {
        {"todo_commits", c.todo_commits}, {"positive", c.positive},
        {"negative", c.negative},         {"train", c.train},
        {"val", c.val},                   {"test", c.test}};
  }
  return j.dump(2) + "\n";
}

ReviewSheet sample_for_review(std::span<const TripleRecord> records,
                              std::size_t n_pos, std::size_t n_neg,
                              std::uint64_t seed) {
  std::vector<TripleRecord> sorted(records.begin(), records.end());
  sort_records(sorted);
  std::vector<const TripleRecord*> pos;
  std::vector<const TripleRecord*> neg;
  for (const auto& r : sorted) {
    (r.label == Label::kPositive ? pos : neg).push_back(&r);
  }
  if (pos.size() < n_pos) throw InsufficientSamples("positive", pos.size(), n_pos);
  if (neg.size() < n_neg) throw InsufficientSamples("negative", neg.size(), n_neg);

  SplitMix64 rng(seed);
  seeded_shuffle(pos, rng);
  seeded_shuffle(neg, rng);

  ReviewSheet sheet;
  auto take = [&](const std::vector<const TripleRecord*>& from, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& r = *from[i];
      sheet.rows.push_back({r.repo, r.commit_id, r.language, r.label,
                            r.code_change, r.todo_comment, r.commit_msg, ""});
    }
  };
  take(pos, n_pos);
  take(neg, n_neg);
  return sheet;
}

std::string review_sheet_csv(const ReviewSheet& sheet) {
  std::string out =
      "repo,commit_id,language,label,todo_comment,code_change,commit_msg,"
      "verdict\r\n";
  for (const auto& r : sheet.rows) {
    out += csv_field(r.repo) + ',' + csv_field(r.commit_id) + ',' +
           std::string(to_string(r.language)) + ',' +
           std::string(to_string(r.label)) + ',' + csv_field(r.todo_comment) +
           ',' + csv_field(r.code_change) + ',' + csv_field(r.commit_msg) +
           ',' + csv_field(r.verdict) + "\r\n";
  }
  return out;
}

std::string record_to_json_line(const TripleRecord& r) {
  ordered_json j;
  j["repo"] = r.repo;
  j["commit_id"] = r.commit_id;
  j["language"] = to_string(r.language);
  j["label"] = to_string(r.label);
  j["split"] = r.split ? ordered_json(to_string(*r.split)) : ordered_json();
  j["todo_comment"] = r.todo_comment;
  j["code_change"] = r.code_change;
  j["commit_msg"] = r.commit_msg;
  return dump_line(j);
}

TripleRecord record_from_json_line(std::string_view line, std::size_t line_no) {
  const auto j = parse_object(line, line_no, kRecordFields);
  TripleRecord r;
  r.repo = get_string(j, "repo", line_no);
  r.commit_id = get_string(j, "commit_id", line_no);
  r.language = parse_enum(j, "language", line_no, parse_language);
  r.label = parse_enum(j, "label", line_no, parse_label);
  if (!j.at("split").is_null()) {
    r.split = parse_enum(j, "split", line_no, parse_split_name);
  }
  r.todo_comment = get_string(j, "todo_comment", line_no);
  r.code_change = get_string(j, "code_change", line_no);
  r.commit_msg = get_string(j, "commit_msg", line_no);
  return r;
}

void write_records(std::span<const TripleRecord> records, std::ostream& out) {
  for (const auto& r : records) out << record_to_json_line(r) << '\n';
  if (!out) throw IoFailure("write failed");
}

std::vector<TripleRecord> read_records(std::istream& in) {
  std::vector<TripleRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    records.push_back(record_from_json_line(line, line_no));
  }
  if (in.bad()) throw IoFailure("read failed");
  return records;
}

void write_records(std::span<const TripleRecord> records,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  write_records(records, out);
  out.close();
  if (!out) throw IoFailure("cannot write " + path.string());
}

std::vector<TripleRecord> read_records(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path.string());
  return read_records(in);
}

std::string triple_to_json_line(const Triple& t) {
  ordered_json j;
  j["repo"] = t.repo;
  j["commit_id"] = t.commit_id;
  j["language"] = to_string(t.language);
  j["scope"] = to_string(t.scope);
  j["todo_comment"] = t.todo_comment;
  j["code_change"] = t.code_change;
  j["commit_msg"] = t.commit_msg;
  return dump_line(j);
}

Triple triple_from_json_line(std::string_view line, std::size_t line_no) {
  const auto j = parse_object(line, line_no, kTripleFields);
  Triple t;
  t.repo = get_string(j, "repo", line_no);
  t.commit_id = get_string(j, "commit_id", line_no);
  t.language = parse_enum(j, "language", line_no, parse_language);
  t.scope = parse_enum(j, "scope", line_no, parse_scope);
  t.todo_comment = get_string(j, "todo_comment", line_no);
  t.code_change = get_string(j, "code_change", line_no);
  t.commit_msg = get_string(j, "commit_msg", line_no);
  return t;
}

std::vector<Triple> read_triples(std::istream& in) {
  std::vector<Triple> triples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    triples.push_back(triple_from_json_line(line, line_no));
  }
  return triples;
}

}  // namespace todomine
