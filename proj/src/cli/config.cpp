#include "config.hpp"

#include <cmath>

namespace bnfkit::cli {

Section::Section(const toml::table* table, std::string path, nlohmann::json& resolved)
    : table_(table), path_(std::move(path)), resolved_(resolved) {
  if (!resolved_.is_object()) resolved_ = nlohmann::json::object();
}

bool Section::has(const std::string& key) const { return table_ && table_->contains(key); }

std::string Section::where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

void Section::fail(const std::string& key, const std::string& what) const {
  std::string loc;
  if (table_)
    if (const toml::node* n = table_->get(key); n && n->source().begin.line > 0)
      loc = " (line " + std::to_string(n->source().begin.line) + ")";
  throw ConfigError(where(key) + loc + ": " + what);
}

const toml::node* Section::lookup(const std::string& key) {
  read_.insert(key);
  return table_ ? table_->get(key) : nullptr;
}

const toml::node* Section::node(const std::string& key) { return lookup(key); }

double Section::number(const std::string& key, double fallback) {
  double v = fallback;
  if (const toml::node* n = lookup(key)) {
    if (n->is_floating_point())
      v = n->as_floating_point()->get();
    else if (n->is_integer())
      v = static_cast<double>(n->as_integer()->get());
    else
      fail(key, "expected a number");
    if (!std::isfinite(v)) fail(key, "must be finite");
  }
  resolved_[key] = v;
  return v;
}

double Section::number(const std::string& key) {
  if (!has(key)) fail(key, "required number is missing");
  return number(key, 0.0);
}

std::int64_t Section::integer(const std::string& key, std::int64_t fallback) {
  std::int64_t v = fallback;
  if (const toml::node* n = lookup(key)) {
    if (!n->is_integer()) fail(key, "expected an integer");
    v = n->as_integer()->get();
  }
  resolved_[key] = v;
  return v;
}

std::int64_t Section::integer(const std::string& key) {
  if (!has(key)) fail(key, "required integer is missing");
  return integer(key, 0);
}

bool Section::boolean(const std::string& key, bool fallback) {
  bool v = fallback;
  if (const toml::node* n = lookup(key)) {
    if (!n->is_boolean()) fail(key, "expected true or false");
    v = n->as_boolean()->get();
  }
  resolved_[key] = v;
  return v;
}

std::string Section::string(const std::string& key, const std::string& fallback) {
  std::string v = fallback;
  if (const toml::node* n = lookup(key)) {
    if (!n->is_string()) fail(key, "expected a string");
    v = n->as_string()->get();
  }
  resolved_[key] = v;
  return v;
}

std::string Section::string(const std::string& key) {
  if (!has(key)) fail(key, "required string is missing");
  return string(key, "");
}

std::vector<double> Section::numbers(const std::string& key, const std::vector<double>& fallback) {
  std::vector<double> v = fallback;
  if (const toml::node* n = lookup(key)) {
    const toml::array* a = n->as_array();
    if (!a) fail(key, "expected an array of numbers");
    v.clear();
    for (std::size_t i = 0; i < a->size(); ++i) {
      const toml::node& e = *a->get(i);
      if (e.is_floating_point())
        v.push_back(e.as_floating_point()->get());
      else if (e.is_integer())
        v.push_back(static_cast<double>(e.as_integer()->get()));
      else
        fail(key, "entry [" + std::to_string(i) + "] is not a number");
      if (!std::isfinite(v.back())) fail(key, "entry [" + std::to_string(i) + "] must be finite");
    }
  }
  resolved_[key] = v;
  return v;
}

std::vector<double> Section::numbers(const std::string& key) {
  if (!has(key)) fail(key, "required array is missing");
  return numbers(key, {});
}

std::vector<std::int64_t> Section::integers(const std::string& key) {
  if (!has(key)) fail(key, "required array is missing");
  const toml::array* a = lookup(key)->as_array();
  if (!a) fail(key, "expected an array of integers");
  std::vector<std::int64_t> v;
  for (std::size_t i = 0; i < a->size(); ++i) {
    if (!a->get(i)->is_integer()) fail(key, "entry [" + std::to_string(i) + "] is not an integer");
    v.push_back(a->get(i)->as_integer()->get());
  }
  resolved_[key] = v;
  return v;
}

Section Section::sub(const std::string& key) {
  const toml::node* n = lookup(key);
  if (n && !n->is_table()) fail(key, "expected a table");
  return Section(n ? n->as_table() : nullptr, where(key), resolved_[key]);
}

void Section::finish() const {
  if (!table_) return;
  for (const auto& [k, v] : *table_) {
    const std::string key(k.str());
    if (!read_.count(key)) fail(key, "unknown key");
  }
}

void require_range(Section& s, const std::string& key, double v, double lo, double hi, bool closed_hi) {
  const bool ok = v > lo && (closed_hi ? v <= hi : v < hi);
  if (!ok)
    s.fail(key, "must lie in (" + std::to_string(lo) + ", " + std::to_string(hi) + (closed_hi ? "]" : ")") +
                    ", got " + std::to_string(v));
}

}  // namespace bnfkit::cli
