#include "pea/config_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "pea/errors.hpp"

namespace pea {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void ConfigMap::set(const std::string& key, const std::string& value) {
  kv_[key] = value;
}

bool ConfigMap::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string ConfigMap::get(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) fail(Err::BadConfig, "missing config key '" + key + "'");
  return it->second;
}

std::string ConfigMap::get_or(const std::string& key,
                              const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

ConfigMap parse_config_text(const std::string& text) {
  ConfigMap cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail(Err::BadConfig,
           "config line " + std::to_string(lineno) + " is not key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      fail(Err::BadConfig,
           "config line " + std::to_string(lineno) + " has an empty key");
    cfg.set(key, value);
  }
  return cfg;
}

ConfigMap load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::BadConfig, "cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= value.size()) {
    size_t comma = value.find(',', start);
    if (comma == std::string::npos) comma = value.size();
    std::string item = trim(value.substr(start, comma - start));
    if (!item.empty()) out.push_back(item);
    start = comma + 1;
  }
  return out;
}

int64_t parse_i64(const std::string& s, const std::string& what) {
  int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    fail(Err::BadConfig, what + ": '" + s + "' is not an integer");
  return v;
}

uint64_t parse_u64(const std::string& s, const std::string& what) {
  uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    fail(Err::BadConfig, what + ": '" + s + "' is not a non-negative integer");
  return v;
}

double parse_f64(const std::string& s, const std::string& what) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    fail(Err::BadConfig, what + ": '" + s + "' is not a number");
  return v;
}

}  // namespace pea
