// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The formula-miner Authors

#include "fminer/corpus.hpp"

#include <openssl/evp.h>
#include <spawn.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "fminer/text.hpp"

extern char** environ;

namespace fminer {

namespace fs = std::filesystem;

RepoManifest parse_manifest(std::string_view text) {
  RepoManifest manifest;
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::string_view trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') {
      if (nl == text.size()) break;
      continue;
    }
    ManifestEntry entry;
    const std::size_t tab = line.find('\t');
    entry.url = std::string(text::trim(line.substr(0, tab)));
    if (tab != std::string_view::npos) {
      const auto branch = text::trim(line.substr(tab + 1));
      if (!branch.empty()) entry.branch = std::string(branch);
    }
    if (entry.url.empty()) {
      throw CorpusError("manifest line " + std::to_string(line_no) +
                        ": empty repository URL");
    }
    if (!seen.insert(entry.url).second) {
      throw CorpusError("manifest line " + std::to_string(line_no) +
                        ": duplicate repository URL " + entry.url);
    }
    manifest.entries.push_back(std::move(entry));
    if (nl == text.size()) break;
  }
  return manifest;
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw CorpusError("error while reading " + path.string());
  return std::move(buf).str();
}

}  // namespace

RepoManifest read_manifest(const fs::path& path) {
  return parse_manifest(read_file(path));
}

std::vector<fs::path> discover(const fs::path& root, Diagnostics* diag) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw CorpusError("not a readable directory: " + root.string());
  }
  fs::recursive_directory_iterator it(
      root, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw CorpusError("cannot read " + root.string() + ": " + ec.message());

  std::vector<fs::path> files;
  for (const fs::recursive_directory_iterator end; it != end;) {
    const fs::directory_entry& entry = *it;
    std::error_code type_ec;
    if (entry.is_regular_file(type_ec) && entry.path().extension() == ".java") {
      files.push_back(entry.path());
    } else if (type_ec && diag) {
      diag->warn("skipped " + entry.path().string() + ": " + type_ec.message());
    }
    it.increment(ec);
    if (ec) {
      if (diag) diag->warn("directory walk: " + ec.message());
      ec.clear();
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

StripOutcome strip_comments_checked(std::string_view in) {
  enum class State { kCode, kLineComment, kBlockComment, kString, kChar, kTextBlock };
  StripOutcome out;
  out.text.assign(in);
  std::string& s = out.text;
  State state = State::kCode;
  const std::size_t n = in.size();
  auto blank = [&](std::size_t i) {
    if (in[i] != '\n' && in[i] != '\r') s[i] = ' ';
  };

  for (std::size_t i = 0; i < n; ++i) {
    const char c = in[i];
    const char next = i + 1 < n ? in[i + 1] : '\0';
    switch (state) {
      case State::kCode:
        if (c == '/' && next == '/') {
          state = State::kLineComment;
          blank(i);
          blank(++i);
        } else if (c == '/' && next == '*') {
          state = State::kBlockComment;
          blank(i);
          blank(++i);
        } else if (c == '"' && in.substr(i, 3) == "\"\"\"") {
          state = State::kTextBlock;
          i += 2;
        } else if (c == '"') {
          state = State::kString;
        } else if (c == '\'') {
          state = State::kChar;
        }
        break;
      case State::kLineComment:
        if (c == '\n') {
          state = State::kCode;
        } else {
          blank(i);
        }
        break;
      case State::kBlockComment:
        if (c == '*' && next == '/') {
          blank(i);
          blank(++i);
          state = State::kCode;
        } else {
          blank(i);
        }
        break;
      case State::kString:
      case State::kChar: {
        const char quote = state == State::kString ? '"' : '\'';
        if (c == '\\' && next != '\n' && next != '\0') {
          ++i;
        } else if (c == quote || c == '\n') {
          state = State::kCode;
        }
        break;
      }
      case State::kTextBlock:
        if (c == '\\' && next != '\0') {
          ++i;
        } else if (in.substr(i, 3) == "\"\"\"") {
          i += 2;
          state = State::kCode;
        }
        break;
    }
  }
  out.unterminated_block = state == State::kBlockComment;
  return out;
}

std::string strip_comments(std::string_view text) {
  return strip_comments_checked(text).text;
}

int count_loc(std::string_view stripped) {
  int loc = 0;
  bool has_code = false;
  for (char c : stripped) {
    if (c == '\n') {
      loc += has_code ? 1 : 0;
      has_code = false;
    } else if (!text::is_space(c)) {
      has_code = true;
    }
  }
  return loc + (has_code ? 1 : 0);
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw CorpusError("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

bool sanitize_utf8(std::string& text) {
  const auto* p = reinterpret_cast<const unsigned char*>(text.data());
  const std::size_t n = text.size();
  std::string out;
  bool replaced = false;
  std::size_t i = 0;
  std::size_t copied = 0;
  auto flush_replace = [&](std::size_t at, std::size_t skip) {
    if (!replaced) out.reserve(n + 16);
    out.append(text, copied, at - copied);
    out.append("\xEF\xBF\xBD");
    copied = at + skip;
    replaced = true;
  };
  while (i < n) {
    const unsigned char c = p[i];
    if (c < 0x80) {
      ++i;
      continue;
    }
    std::size_t len = 0;
    unsigned int cp = 0;
    if (c >= 0xC2 && c <= 0xDF) {
      len = 2;
      cp = c & 0x1F;
    } else if (c >= 0xE0 && c <= 0xEF) {
      len = 3;
      cp = c & 0x0F;
    } else if (c >= 0xF0 && c <= 0xF4) {
      len = 4;
      cp = c & 0x07;
    }
    bool ok = len != 0 && i + len <= n;
    for (std::size_t k = 1; ok && k < len; ++k) {
      if ((p[i + k] & 0xC0) != 0x80) ok = false;
      cp = (cp << 6) | (p[i + k] & 0x3F);
    }
    if (ok) {
      // reject overlongs, surrogates and out-of-range code points
      if ((len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
          (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
        ok = false;
      }
    }
    if (ok) {
      i += len;
    } else {
      flush_replace(i, 1);
      ++i;
    }
  }
  if (replaced) {
    out.append(text, copied, std::string::npos);
    text = std::move(out);
  }
  return replaced;
}

SourceUnit make_unit(std::string project, std::string relative_path,
                     std::string bytes) {
  SourceUnit unit;
  unit.project = std::move(project);
  unit.relative_path = std::move(relative_path);
  unit.content_hash = sha256_hex(bytes);
  unit.replaced_invalid_utf8 = sanitize_utf8(bytes);
  StripOutcome stripped = strip_comments_checked(bytes);
  unit.unterminated_comment = stripped.unterminated_block;
  unit.stripped_text = std::move(stripped.text);
  unit.total_lines = text::count_lines(unit.stripped_text);
  unit.loc = count_loc(unit.stripped_text);
  return unit;
}

SourceUnit load_unit(const fs::path& file, std::string project,
                     std::string relative_path) {
  return make_unit(std::move(project), std::move(relative_path),
                   read_file(file));
}

std::vector<SourceUnit> dedup(std::vector<SourceUnit> units) {
  std::unordered_map<std::string, std::size_t> survivor;
  for (std::size_t i = 0; i < units.size(); ++i) {
    auto [it, inserted] = survivor.emplace(units[i].content_hash, i);
    if (inserted) continue;
    const SourceUnit& cur = units[it->second];
    if (std::tie(units[i].project, units[i].relative_path) <
        std::tie(cur.project, cur.relative_path)) {
      it->second = i;
    }
  }
  std::vector<SourceUnit> out;
  out.reserve(survivor.size());
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (survivor.at(units[i].content_hash) == i) out.push_back(std::move(units[i]));
  }
  return out;
}

std::string project_name_for(std::string_view url) {
  std::string_view u = url;
  while (!u.empty() && (u.back() == '/' || u.back() == '\\')) u.remove_suffix(1);
  if (u.size() > 4 && u.substr(u.size() - 4) == ".git") u.remove_suffix(4);
  const std::size_t cut = u.find_last_of("/:\\");
  std::string name(cut == std::string_view::npos ? u : u.substr(cut + 1));
  for (char& c : name) {
    if (!text::is_ident_char(c) && c != '-' && c != '.') c = '_';
  }
  if (name.empty() || name == "." || name == "..") name = "repo";
  return name;
}

namespace {

int run_git_clone(const ManifestEntry& entry, const fs::path& target) {
  std::vector<std::string> args = {"git", "clone", "--depth", "1", "--quiet"};
  if (entry.branch) {
    args.emplace_back("--branch");
    args.push_back(*entry.branch);
  }
  args.emplace_back("--");
  args.push_back(entry.url);
  args.push_back(target.string());
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);

  std::vector<std::string> env_store;
  for (char** e = environ; e && *e; ++e) env_store.emplace_back(*e);
  env_store.emplace_back("GIT_TERMINAL_PROMPT=0");
  std::vector<char*> envp;
  for (auto& e : env_store) envp.push_back(e.data());
  envp.push_back(nullptr);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, 1, "/dev/null", 0, 0);
  posix_spawn_file_actions_addopen(&actions, 2, "/dev/null", 0, 0);
  pid_t pid = 0;
  const int rc = posix_spawnp(&pid, "git", &actions, nullptr, argv.data(),
                              envp.data());
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) return -1;
  int status = 0;
  if (waitpid(pid, &status, 0) < 0) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

FetchOutcome fetch(const RepoManifest& manifest, const fs::path& dest) {
  FetchOutcome outcome;
  std::error_code ec;
  fs::create_directories(dest, ec);
  if (ec) {
    for (const auto& entry : manifest.entries) {
      outcome.failures.push_back(entry.url + ": cannot create " +
                                 dest.string() + ": " + ec.message());
    }
    return outcome;
  }
  std::set<std::string> used;
  for (const auto& entry : manifest.entries) {
    std::string name = project_name_for(entry.url);
    for (int k = 2; !used.insert(name).second; ++k) {
      name = project_name_for(entry.url) + "-" + std::to_string(k);
    }
    const fs::path target = dest / name;
    if (fs::exists(target, ec)) {
      outcome.failures.push_back(entry.url + ": destination " +
                                 target.string() + " already exists");
      continue;
    }
    const int rc = run_git_clone(entry, target);
    if (rc == 0) {
      outcome.cloned.push_back(target);
    } else {
      outcome.failures.push_back(entry.url + ": git clone failed (exit " +
                                 std::to_string(rc) + ")");
      fs::remove_all(target, ec);
    }
  }
  return outcome;
}

}  // namespace fminer
