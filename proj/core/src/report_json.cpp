#include "critns/report_json.hpp"

#include <cmath>
#include <cstdio>

namespace critns {

std::string config_hash(const nlohmann::json& config) {
  // nlohmann::json keeps object keys sorted, so the compact dump is canonical.
  const std::string s = config.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::ordered_json json_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace critns
