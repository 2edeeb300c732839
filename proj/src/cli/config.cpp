#include "sseplab/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace sseplab {
namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

std::string where(const std::string& name, int line) {
  return name + ":" + std::to_string(line);
}

/// Single-space-normalized value, so "4 8  16" and "4 8 16" hash alike.
std::string normalize(const std::string& value) {
  std::string out;
  bool in_gap = false;
  for (char c : value) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_gap = !out.empty();
    } else {
      if (in_gap) out.push_back(' ');
      in_gap = false;
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> split_tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

double parse_double_token(const std::string& token, const ConfigEntry& where_entry) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(where_entry.line) + ": key '" +
                      where_entry.key + "': '" + token + "' is not a number");
  }
}

std::int64_t parse_int_token(const std::string& token, const ConfigEntry& where_entry) {
  std::int64_t v = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("line " + std::to_string(where_entry.line) + ": key '" +
                      where_entry.key + "': '" + token + "' is not an integer");
  }
  return v;
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_text(text.str(), path);
}

ConfigFile ConfigFile::parse_text(const std::string& text, const std::string& name) {
  ConfigFile file;
  file.name_ = name;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']' || s.size() < 3) {
        throw ConfigError(where(name, line) + ": malformed section header '" + s + "'");
      }
      section = trim(s.substr(1, s.size() - 2));
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(where(name, line) + ": expected 'key = value', got '" + s + "'");
    }
    ConfigEntry entry;
    entry.section = section;
    entry.key = trim(s.substr(0, eq));
    entry.value = trim(s.substr(eq + 1));
    entry.line = line;
    if (entry.key.empty()) throw ConfigError(where(name, line) + ": empty key");
    if (entry.section.empty()) {
      throw ConfigError(where(name, line) + ": key '" + entry.key +
                        "' appears before any [section]");
    }
    if (entry.value.empty()) {
      throw ConfigError(where(name, line) + ": key '" + entry.key + "' has no value");
    }
    file.entries_.push_back(std::move(entry));
  }
  return file;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  for (const ConfigEntry& e : entries_) {
    if (e.section == section && e.key == key) return true;
  }
  return false;
}

const ConfigEntry& ConfigFile::require(const std::string& section,
                                       const std::string& key) const {
  const ConfigEntry* found = nullptr;
  for (const ConfigEntry& e : entries_) {
    if (e.section == section && e.key == key) found = &e;
  }
  if (!found) {
    throw ConfigError(name_ + ": missing required key '" + key + "' in section [" +
                      section + "]");
  }
  return *found;
}

std::string ConfigFile::value_or(const std::string& section, const std::string& key,
                                 const std::string& fallback) const {
  return has(section, key) ? require(section, key).value : fallback;
}

std::vector<const ConfigEntry*> ConfigFile::repeated(const std::string& section,
                                                     const std::string& key) const {
  std::vector<const ConfigEntry*> out;
  for (const ConfigEntry& e : entries_) {
    if (e.section == section && e.key == key) out.push_back(&e);
  }
  return out;
}

double ConfigFile::require_double(const std::string& section,
                                  const std::string& key) const {
  const ConfigEntry& e = require(section, key);
  return parse_double_token(e.value, e);
}

double ConfigFile::double_or(const std::string& section, const std::string& key,
                             double fallback) const {
  if (!has(section, key)) return fallback;
  return require_double(section, key);
}

std::int64_t ConfigFile::require_int(const std::string& section,
                                     const std::string& key) const {
  const ConfigEntry& e = require(section, key);
  return parse_int_token(e.value, e);
}

std::int64_t ConfigFile::int_or(const std::string& section, const std::string& key,
                                std::int64_t fallback) const {
  if (!has(section, key)) return fallback;
  return require_int(section, key);
}

std::vector<int> ConfigFile::require_int_list(const std::string& section,
                                              const std::string& key) const {
  const ConfigEntry& e = require(section, key);
  std::vector<int> out;
  for (const std::string& tok : split_tokens(e.value)) {
    out.push_back(static_cast<int>(parse_int_token(tok, e)));
  }
  if (out.empty()) {
    throw ConfigError("line " + std::to_string(e.line) + ": key '" + key +
                      "' needs at least one integer");
  }
  return out;
}

std::vector<double> ConfigFile::double_list_or(const std::string& section,
                                               const std::string& key,
                                               const std::vector<double>& fallback) const {
  if (!has(section, key)) return fallback;
  const ConfigEntry& e = require(section, key);
  std::vector<double> out;
  for (const std::string& tok : split_tokens(e.value)) {
    out.push_back(parse_double_token(tok, e));
  }
  return out;
}

std::uint64_t ConfigFile::canonical_hash() const {
  std::vector<std::string> canon;
  std::map<std::string, int> occurrence;
  for (const ConfigEntry& e : entries_) {
    const std::string slot = e.section + "." + e.key;
    const int index = occurrence[slot]++;
    canon.push_back(slot + "#" + std::to_string(index) + "=" + normalize(e.value));
  }
  std::sort(canon.begin(), canon.end());
  std::uint64_t h = 14695981039346656037ULL;
  for (const std::string& s : canon) {
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ULL;
    }
    h ^= static_cast<unsigned char>('\n');
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace sseplab
