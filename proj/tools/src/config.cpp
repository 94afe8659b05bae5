#include "critns_cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "critns/report_json.hpp"

namespace critns::cli {

namespace {

std::pair<std::string, std::string> split_key(const std::string& key) {
  const auto dot = key.find('.');
  if (dot == std::string::npos) return {"", key};
  return {key.substr(0, dot), key.substr(dot + 1)};
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& s) {
  const std::string t = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    if (t == "inf") return std::numeric_limits<double>::infinity();
    throw InvalidArgument("config key '" + key + "': expected a number, got '" + s + "'");
  }
  return v;
}

}  // namespace

Config::Config(nlohmann::json tree) : tree_(std::move(tree)) {
  if (!tree_.is_object()) throw InvalidArgument("config root must be an object");
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  if (path.extension() == ".json") {
    try {
      return Config(nlohmann::json::parse(ss.str()));
    } catch (const nlohmann::json::parse_error& e) {
      throw InvalidArgument("config '" + path.string() + "': " + e.what());
    }
  }
  return parse_ini(ss.str());
}

Config Config::parse_ini(const std::string& text) {
  boost::property_tree::ptree pt;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, pt);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  nlohmann::json tree = nlohmann::json::object();
  for (const auto& [name, node] : pt) {
    if (node.empty()) {
      tree[name] = trim(node.data());
      continue;
    }
    nlohmann::json section = nlohmann::json::object();
    for (const auto& [k, v] : node) section[k] = trim(v.data());
    tree[name] = section;
  }
  return Config(std::move(tree));
}

const nlohmann::json* Config::find(const std::string& key) const {
  const auto [section, name] = split_key(key);
  const nlohmann::json* node = &tree_;
  if (!section.empty()) {
    const auto it = tree_.find(section);
    if (it == tree_.end() || !it->is_object()) return nullptr;
    node = &*it;
  }
  const auto it = node->find(name);
  if (it == node->end() || it->is_null()) return nullptr;
  return &*it;
}

const nlohmann::json& Config::require(const std::string& key) const {
  const auto* v = find(key);
  if (v == nullptr) throw MissingKey(key);
  return *v;
}

bool Config::has(const std::string& key) const { return find(key) != nullptr; }

std::string Config::text(const std::string& key) const {
  const auto& v = require(key);
  return v.is_string() ? v.get<std::string>() : v.dump();
}

std::string Config::text(const std::string& key, const std::string& fallback) const {
  return has(key) ? text(key) : fallback;
}

double Config::number(const std::string& key) const {
  const auto& v = require(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return to_double(key, v.get<std::string>());
  throw InvalidArgument("config key '" + key + "': expected a number");
}

double Config::number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

long long Config::integer(const std::string& key) const {
  const auto& v = require(key);
  if (v.is_number_integer()) return v.get<long long>();
  const std::string s = v.is_string() ? trim(v.get<std::string>()) : v.dump();
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument("config key '" + key + "': expected an integer, got '" + s + "'");
  }
  return out;
}

long long Config::integer(const std::string& key, long long fallback) const {
  return has(key) ? integer(key) : fallback;
}

bool Config::flag(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const auto& v = require(key);
  if (v.is_boolean()) return v.get<bool>();
  const std::string s = trim(v.is_string() ? v.get<std::string>() : v.dump());
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw InvalidArgument("config key '" + key + "': expected a boolean, got '" + s + "'");
}

std::vector<double> Config::numbers(const std::string& key) const {
  const auto& v = require(key);
  std::vector<double> out;
  if (v.is_array()) {
    for (const auto& e : v) {
      out.push_back(e.is_string() ? to_double(key, e.get<std::string>()) : e.get<double>());
    }
    return out;
  }
  if (v.is_number()) return {v.get<double>()};
  std::stringstream ss(v.get<std::string>());
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!trim(item).empty()) out.push_back(to_double(key, item));
  }
  return out;
}

void Config::set(const std::string& key, nlohmann::json value) {
  const auto [section, name] = split_key(key);
  if (section.empty()) {
    tree_[name] = std::move(value);
  } else {
    tree_[section][name] = std::move(value);
  }
}

std::string Config::hash() const { return config_hash(tree_); }

double parse_length(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    const std::string head = trim(s.substr(0, s.size() - 2));
    const double factor = head.empty() ? 1.0 : to_double("grid.l", head);
    return factor * std::numbers::pi;
  }
  return to_double("grid.l", s);
}

}  // namespace critns::cli
