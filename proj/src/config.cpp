#include "mesonet/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mesonet {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str(), path);
}

KeyValueConfig KeyValueConfig::from_string(const std::string& text,
                                           const std::string& origin) {
  KeyValueConfig cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                               ": expected key=value, got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                               ": empty key");
    if (cfg.values_.count(key))
      throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                               ": duplicate key '" + key + "'");
    cfg.values_[key] = val;
  }
  return cfg;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& dflt) const {
  consumed_.insert(key);
  auto it = values_.find(key);
  return it == values_.end() ? dflt : it->second;
}

std::string KeyValueConfig::require_string(const std::string& key) const {
  consumed_.insert(key);
  auto it = values_.find(key);
  if (it == values_.end())
    throw std::runtime_error(origin_ + ": missing required key '" + key + "'");
  return it->second;
}

double KeyValueConfig::get_double(const std::string& key, double dflt) const {
  consumed_.insert(key);
  auto it = values_.find(key);
  if (it == values_.end()) return dflt;
  try {
    size_t pos = 0;
    double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(origin_ + ": key '" + key +
                             "' is not a number: '" + it->second + "'");
  }
}

int KeyValueConfig::get_int(const std::string& key, int dflt) const {
  consumed_.insert(key);
  auto it = values_.find(key);
  if (it == values_.end()) return dflt;
  try {
    size_t pos = 0;
    int v = std::stoi(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(origin_ + ": key '" + key +
                             "' is not an integer: '" + it->second + "'");
  }
}

uint64_t KeyValueConfig::get_uint64(const std::string& key,
                                    uint64_t dflt) const {
  consumed_.insert(key);
  auto it = values_.find(key);
  if (it == values_.end()) return dflt;
  try {
    size_t pos = 0;
    unsigned long long v = std::stoull(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(origin_ + ": key '" + key +
                             "' is not an unsigned integer: '" + it->second +
                             "'");
  }
}

bool KeyValueConfig::get_bool(const std::string& key, bool dflt) const {
  consumed_.insert(key);
  auto it = values_.find(key);
  if (it == values_.end()) return dflt;
  const std::string& v = it->second;
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::runtime_error(origin_ + ": key '" + key +
                           "' is not a boolean: '" + v + "'");
}

std::vector<std::string> KeyValueConfig::unconsumed_keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : values_)
    if (!consumed_.count(k)) out.push_back(k);
  return out;
}

void KeyValueConfig::reject_unconsumed() const {
  auto unknown = unconsumed_keys();
  if (unknown.empty()) return;
  std::string msg = origin_ + ": unknown configuration key(s):";
  for (const auto& k : unknown) msg += " '" + k + "'";
  throw std::runtime_error(msg);
}

std::string KeyValueConfig::canonical_text() const {
  std::string out;
  for (const auto& [k, v] : values_) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  }
  return out;
}

}  // namespace mesonet
