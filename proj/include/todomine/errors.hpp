#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace todomine {

// Base of every error the library throws. Pipeline stages that must keep
// going (skip-and-log) catch this; anything else is a programming error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// repo_ingest
class SourceNotFound : public Error {
 public:
  explicit SourceNotFound(const std::string& path)
      : Error("source not found: " + path) {}
};

class NotAGitRepository : public Error {
 public:
  explicit NotAGitRepository(const std::string& path)
      : Error("not a git repository or patch archive: " + path) {}
};

class UnreadableCommit : public Error {
 public:
  UnreadableCommit(std::string commit_id, const std::string& why)
      : Error("unreadable commit " + commit_id + ": " + why),
        commit_id_(std::move(commit_id)) {}
  const std::string& commit_id() const { return commit_id_; }

 private:
  std::string commit_id_;
};

class MalformedArchiveEntry : public Error {
 public:
  MalformedArchiveEntry(std::string file, const std::string& why)
      : Error("malformed archive entry " + file + ": " + why),
        file_(std::move(file)) {}
  const std::string& file() const { return file_; }

 private:
  std::string file_;
};

class DuplicateCommitId : public Error {
 public:
  explicit DuplicateCommitId(const std::string& id)
      : Error("duplicate commit id in archive: " + id) {}
};

// diff_model
class MalformedHunkHeader : public Error {
 public:
  MalformedHunkHeader(std::size_t line_no, const std::string& line)
      : Error("malformed hunk header at line " + std::to_string(line_no) +
              ": " + line),
        line_no_(line_no) {}
  std::size_t line_no() const { return line_no_; }

 private:
  std::size_t line_no_;
};

class LineCountMismatch : public Error {
 public:
  LineCountMismatch(std::size_t line_no, const std::string& why)
      : Error("hunk at line " + std::to_string(line_no) +
              " disagrees with its header: " + why),
        line_no_(line_no) {}
  std::size_t line_no() const { return line_no_; }

 private:
  std::size_t line_no_;
};

class UnknownMarker : public Error {
 public:
  explicit UnknownMarker(char c)
      : Error(std::string("unknown diff line marker '") + c + "'") {}
};

// normalize
class EmptyMessage : public Error {
 public:
  EmptyMessage() : Error("commit message is empty after normalization") {}
};

class InvalidPattern : public Error {
 public:
  using Error::Error;
};

// dataset
class EmptyDataset : public Error {
 public:
  EmptyDataset() : Error("cannot split an empty dataset") {}
};

class InsufficientSamples : public Error {
 public:
  InsufficientSamples(const std::string& cls, std::size_t have,
                      std::size_t want)
      : Error("not enough " + cls + " samples: have " + std::to_string(have) +
              ", want " + std::to_string(want)),
        have_(have),
        want_(want) {}
  std::size_t have() const { return have_; }
  std::size_t want() const { return want_; }

 private:
  std::size_t have_;
  std::size_t want_;
};

class IoFailure : public Error {
 public:
  using Error::Error;
};

class SchemaViolation : public Error {
 public:
  SchemaViolation(std::size_t line_no, const std::string& why)
      : Error("schema violation at line " + std::to_string(line_no) + ": " +
              why),
        line_no_(line_no) {}
  std::size_t line_no() const { return line_no_; }

 private:
  std::size_t line_no_;
};

// cli
class ConfigError : public Error {
 public:
  using Error::Error;
};

class ManifestConfigMismatch : public Error {
 public:
  ManifestConfigMismatch(const std::string& have, const std::string& want)
      : Error("manifest was written for config " + have +
              " but the loaded config digests to " + want) {}
};

}  // namespace todomine
