#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "critns/error.hpp"

namespace critns::cli {

class MissingKey : public InvalidArgument {
 public:
  explicit MissingKey(const std::string& key)
      : InvalidArgument("missing config key '" + key + "'"), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Two-level key-value configuration ("section.key"), read from INI or JSON.
///
/// INI values stay strings and are converted on access, so `n = 32` and `"n": 32` read the same.
class Config {
 public:
  Config() = default;
  explicit Config(nlohmann::json tree);

  /// JSON when the extension is .json, INI otherwise.
  static Config load(const std::filesystem::path& path);
  static Config parse_ini(const std::string& text);

  bool has(const std::string& key) const;
  std::string text(const std::string& key) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  long long integer(const std::string& key) const;
  long long integer(const std::string& key, long long fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  /// Comma-separated list or JSON array; an empty string gives an empty list.
  std::vector<double> numbers(const std::string& key) const;

  void set(const std::string& key, nlohmann::json value);
  const nlohmann::json& tree() const { return tree_; }
  std::string hash() const;

 private:
  const nlohmann::json* find(const std::string& key) const;
  const nlohmann::json& require(const std::string& key) const;

  nlohmann::json tree_ = nlohmann::json::object();
};

/// Parses "6.28", "2pi", "pi" and "0.5pi".
double parse_length(const std::string& s);

}  // namespace critns::cli
