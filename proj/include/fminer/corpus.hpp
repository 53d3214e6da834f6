// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The formula-miner Authors

// Source discovery, comment removal and line bookkeeping for Java corpora.

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fminer {

/// Warnings collected while reading a corpus. Fatal problems are thrown.
struct Diagnostics {
  std::vector<std::string> warnings;

  void warn(std::string message) { warnings.push_back(std::move(message)); }
  void append(const Diagnostics& other) {
    warnings.insert(warnings.end(), other.warnings.begin(),
                    other.warnings.end());
  }
};

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ManifestEntry {
  std::string url;
  std::optional<std::string> branch;
};

/// List of repositories to clone. URLs are non-empty and unique.
struct RepoManifest {
  std::vector<ManifestEntry> entries;
};

/// Parses `URL[<TAB>branch]` lines; blank lines and `#` comments are
/// skipped. Throws CorpusError on an empty or duplicate URL.
RepoManifest parse_manifest(std::string_view text);
RepoManifest read_manifest(const std::filesystem::path& path);

/// One comment-stripped Java file.
struct SourceUnit {
  std::string project;
  std::string relative_path;  ///< '/'-separated, relative to the project
  std::string stripped_text;
  int total_lines = 0;
  int loc = 0;
  std::string content_hash;  ///< hex SHA-256 of the original bytes
  bool replaced_invalid_utf8 = false;
  bool unterminated_comment = false;
};

/// All `.java` files below `root`, sorted by path. Throws CorpusError when
/// `root` is not a readable directory; unreadable entries become warnings.
std::vector<std::filesystem::path> discover(const std::filesystem::path& root,
                                            Diagnostics* diag = nullptr);

struct StripOutcome {
  std::string text;
  bool unterminated_block = false;
};

/// Replaces the bodies of `//` and `/* */` comments by spaces. Newlines are
/// kept, string/char/text-block literals are left untouched, and the output
/// has the same length and line count as the input.
StripOutcome strip_comments_checked(std::string_view text);
std::string strip_comments(std::string_view text);

/// Lines containing at least one non-whitespace character.
int count_loc(std::string_view stripped);

std::string sha256_hex(std::string_view bytes);

/// Replaces ill-formed UTF-8 sequences by U+FFFD. Returns true if any
/// replacement happened.
bool sanitize_utf8(std::string& text);

/// Builds a SourceUnit from raw file bytes.
SourceUnit make_unit(std::string project, std::string relative_path,
                     std::string bytes);

/// Reads `file` and builds its SourceUnit. Throws CorpusError when the file
/// cannot be read.
SourceUnit load_unit(const std::filesystem::path& file, std::string project,
                     std::string relative_path);

/// Keeps, per content hash, only the unit with the smallest
/// (project, relative_path); survivors keep their input order.
std::vector<SourceUnit> dedup(std::vector<SourceUnit> units);

struct FetchOutcome {
  std::vector<std::filesystem::path> cloned;
  std::vector<std::string> failures;
};

/// Directory name used for a repository URL inside the fetch destination.
std::string project_name_for(std::string_view url);

/// Shallow-clones every manifest entry into `dest/<project>` with the system
/// git client. Failures are recorded per entry; the batch never aborts.
FetchOutcome fetch(const RepoManifest& manifest,
                   const std::filesystem::path& dest);

}  // namespace fminer
