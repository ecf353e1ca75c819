#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pea {

// Flat key=value configuration document mirroring the CLI flags. '#' starts
// a comment, blank lines are skipped, values may be comma-separated lists
// for sweep axes. Later assignments to the same key override earlier ones,
// and CLI flags override file values (the merge happens in the CLI layer).
class ConfigMap {
 public:
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  std::string get(const std::string& key) const;  // BadConfig when missing
  std::string get_or(const std::string& key, const std::string& fallback) const;
  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

ConfigMap load_config(const std::string& path);
ConfigMap parse_config_text(const std::string& text);

std::vector<std::string> split_list(const std::string& value);

// strict numeric parsers; `what` names the offending key in the error
int64_t parse_i64(const std::string& s, const std::string& what);
double parse_f64(const std::string& s, const std::string& what);
uint64_t parse_u64(const std::string& s, const std::string& what);

}  // namespace pea
