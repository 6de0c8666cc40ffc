#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mesonet {

// Flat key=value text configuration.  '#' starts a comment, blank lines are
// ignored.  Consumers read keys through the typed getters; any key that was
// present in the file but never consumed is reported by unconsumed_keys(), and
// scenario loading turns that into a hard error naming the offending keys.
class KeyValueConfig {
 public:
  static KeyValueConfig from_file(const std::string& path);
  static KeyValueConfig from_string(const std::string& text,
                                    const std::string& origin = "<string>");

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string get_string(const std::string& key, const std::string& dflt) const;
  double get_double(const std::string& key, double dflt) const;
  int get_int(const std::string& key, int dflt) const;
  uint64_t get_uint64(const std::string& key, uint64_t dflt) const;
  bool get_bool(const std::string& key, bool dflt) const;

  std::string require_string(const std::string& key) const;

  // Keys present in the source text that no getter ever touched.
  std::vector<std::string> unconsumed_keys() const;
  void reject_unconsumed() const;  // throws listing unknown keys

  const std::string& origin() const { return origin_; }
  // Canonical "key=value\n" serialization of the parsed content, used for
  // run-manifest hashing.
  std::string canonical_text() const;

 private:
  std::map<std::string, std::string> values_;
  mutable std::set<std::string> consumed_;
  std::string origin_;
};

}  // namespace mesonet
