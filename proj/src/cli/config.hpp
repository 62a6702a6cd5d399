#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>
#include <toml.hpp>

#include "bnfkit/cli/cli.hpp"

namespace bnfkit::cli {

/// Typed view of one TOML table. Every read is recorded in `resolved` (with
/// defaults filled in); finish() rejects keys that were never read.
class Section {
 public:
  Section(const toml::table* table, std::string path, nlohmann::json& resolved);

  bool present() const { return table_ != nullptr; }
  bool has(const std::string& key) const;
  const std::string& path() const { return path_; }

  double number(const std::string& key, double fallback);
  double number(const std::string& key);
  std::int64_t integer(const std::string& key, std::int64_t fallback);
  std::int64_t integer(const std::string& key);
  bool boolean(const std::string& key, bool fallback);
  std::string string(const std::string& key, const std::string& fallback);
  std::string string(const std::string& key);
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback);
  std::vector<double> numbers(const std::string& key);
  std::vector<std::int64_t> integers(const std::string& key);
  Section sub(const std::string& key);
  /// Raw node access for irregular shapes (the key counts as read).
  const toml::node* node(const std::string& key);

  void finish() const;
  [[noreturn]] void fail(const std::string& key, const std::string& what) const;

 private:
  const toml::node* lookup(const std::string& key);
  std::string where(const std::string& key) const;

  const toml::table* table_;
  std::string path_;
  nlohmann::json& resolved_;
  std::set<std::string> read_;
};

/// Checks lo < v < hi (open) or lo < v <= hi (closed_hi).
void require_range(Section& s, const std::string& key, double v, double lo, double hi, bool closed_hi = false);

}  // namespace bnfkit::cli
