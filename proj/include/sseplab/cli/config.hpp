#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sseplab {

/// Config-file problem; the message always names the file, the line, or the
/// missing section/key so the failure is actionable from the shell.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfigEntry {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;
};

/// Flat key-value sections:
///   [section]
///   key = value tokens   # trailing comments allowed
/// Keys may repeat (mode/field/entry lists); scalar accessors take the last
/// occurrence, `repeated` returns all in file order.
class ConfigFile {
 public:
  static ConfigFile parse_file(const std::string& path);
  static ConfigFile parse_text(const std::string& text, const std::string& name);

  const std::string& name() const { return name_; }
  const std::vector<ConfigEntry>& entries() const { return entries_; }

  bool has(const std::string& section, const std::string& key) const;
  const ConfigEntry& require(const std::string& section, const std::string& key) const;
  std::string value_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
  std::vector<const ConfigEntry*> repeated(const std::string& section,
                                           const std::string& key) const;

  double require_double(const std::string& section, const std::string& key) const;
  double double_or(const std::string& section, const std::string& key,
                   double fallback) const;
  std::int64_t require_int(const std::string& section, const std::string& key) const;
  std::int64_t int_or(const std::string& section, const std::string& key,
                      std::int64_t fallback) const;
  std::vector<int> require_int_list(const std::string& section,
                                    const std::string& key) const;
  std::vector<double> double_list_or(const std::string& section, const std::string& key,
                                     const std::vector<double>& fallback) const;

  /// FNV-1a over the sorted canonical "section.key#occurrence=value" strings:
  /// invariant under reordering of distinct keys, sensitive to the order of
  /// repeated keys and to every value token.
  std::uint64_t canonical_hash() const;

 private:
  std::string name_;
  std::vector<ConfigEntry> entries_;
};

/// Whitespace-separated tokens of a value string.
std::vector<std::string> split_tokens(const std::string& s);

/// Numeric parse with a config diagnostic on failure.
double parse_double_token(const std::string& token, const ConfigEntry& where);
std::int64_t parse_int_token(const std::string& token, const ConfigEntry& where);

}  // namespace sseplab
