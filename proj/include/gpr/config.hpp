#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpr {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// flat key=value configuration with dotted sections; '#' starts a comment
class Config {
 public:
  Config() = default;
  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text);

  void set(const std::string& key, const std::string& value) { kv_[key] = value; }
  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  std::string get_str(const std::string& key, const std::string& dflt) const;
  std::string require_str(const std::string& key) const;
  double get_num(const std::string& key, double dflt) const;
  int get_int(const std::string& key, int dflt) const;
  bool get_bool(const std::string& key, bool dflt) const;

  void merge(const Config& other);  // other wins
  std::vector<std::pair<std::string, std::string>> items() const;

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace gpr
