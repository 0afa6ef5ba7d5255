#include "settings.hpp"

#include <charconv>
#include <sstream>

#include "lifo/error.hpp"

namespace lifo::cli {

Settings::Settings(Json file, std::map<std::string, std::string> flags)
    : file_(std::move(file)), flags_(std::move(flags)) {
  if (!file_.is_null() && !file_.is_object()) throw ConfigError("config", "top level must be a JSON object");
}

bool Settings::has(const std::string& key) const { return raw(key).has_value(); }

std::optional<std::string> Settings::raw(const std::string& key) const {
  if (auto it = flags_.find(key); it != flags_.end()) return it->second;
  if (file_.is_object() && file_.contains(key)) {
    const Json& v = file_.at(key);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string joined;
      for (const auto& item : v) {
        if (!joined.empty()) joined += ',';
        joined += item.is_string() ? item.get<std::string>() : item.dump();
      }
      return joined;
    }
    return v.dump();
  }
  return std::nullopt;
}

namespace {

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ConfigError(key, "expected a number, got '" + text + "'");
  return value;
}

}  // namespace

long long Settings::get_int(const std::string& key, long long fallback) {
  const auto r = raw(key);
  const long long v = r ? parse_number<long long>(key, *r) : fallback;
  echo_[key] = v;
  return v;
}

std::optional<long long> Settings::find_int(const std::string& key) {
  if (!has(key)) return std::nullopt;
  return get_int(key, 0);
}

std::uint64_t Settings::get_u64(const std::string& key, std::uint64_t fallback) {
  const auto r = raw(key);
  if (r && !r->empty() && (*r)[0] == '-') throw ConfigError(key, "must not be negative");
  // Large caps are easier to type as 1e10.
  std::uint64_t v = fallback;
  if (r) {
    if (r->find_first_of("eE.") != std::string::npos) {
      const double d = parse_number<double>(key, *r);
      if (!(d >= 0.0 && d < 1.8e19) || d != static_cast<double>(static_cast<std::uint64_t>(d)))
        throw ConfigError(key, "expected a non-negative integer, got '" + *r + "'");
      v = static_cast<std::uint64_t>(d);
    } else {
      v = parse_number<std::uint64_t>(key, *r);
    }
  }
  echo_[key] = v;
  return v;
}

double Settings::get_double(const std::string& key, double fallback) {
  const auto r = raw(key);
  double v = fallback;
  if (r) {
    if (const auto slash = r->find('/'); slash != std::string::npos) {
      const double num = parse_number<double>(key, r->substr(0, slash));
      const double den = parse_number<double>(key, r->substr(slash + 1));
      if (den == 0.0) throw ConfigError(key, "zero denominator");
      v = num / den;
    } else {
      v = parse_number<double>(key, *r);
    }
  }
  echo_[key] = v;
  return v;
}

std::string Settings::get_string(const std::string& key, const std::string& fallback) {
  const auto r = raw(key);
  const std::string v = r ? *r : fallback;
  echo_[key] = v;
  return v;
}

std::optional<std::string> Settings::find_string(const std::string& key) {
  if (!has(key)) return std::nullopt;
  return get_string(key, "");
}

std::vector<std::string> Settings::get_list(const std::string& key, const std::vector<std::string>& fallback) {
  std::vector<std::string> out;
  if (const auto r = raw(key)) {
    std::stringstream in(*r);
    for (std::string item; std::getline(in, item, ',');)
      if (!item.empty()) out.push_back(item);
  } else {
    out = fallback;
  }
  echo_[key] = out;
  return out;
}

std::uint64_t Settings::require_seed() {
  if (!has("seed")) throw ConfigError("seed", "required; pass --seed");
  return get_u64("seed", 0);
}

}  // namespace lifo::cli
