#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace lifo::cli {

using Json = nlohmann::ordered_json;

/// Merged configuration: values from --config, overridden by flags given on
/// the command line. Every value read is echoed (defaults included) so the
/// manifest records exactly what ran.
class Settings {
 public:
  Settings(Json file, std::map<std::string, std::string> flags);

  bool has(const std::string& key) const;

  long long get_int(const std::string& key, long long fallback);
  std::optional<long long> find_int(const std::string& key);
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback);
  double get_double(const std::string& key, double fallback);
  std::string get_string(const std::string& key, const std::string& fallback);
  std::optional<std::string> find_string(const std::string& key);
  /// Comma separated on the command line, array or string in the config file.
  std::vector<std::string> get_list(const std::string& key, const std::vector<std::string>& fallback);
  std::uint64_t require_seed();

  const Json& echo() const { return echo_; }

 private:
  /// Raw text of a flag, or the config value rendered as text.
  std::optional<std::string> raw(const std::string& key) const;

  Json file_;
  std::map<std::string, std::string> flags_;
  Json echo_ = Json::object();
};

}  // namespace lifo::cli
