#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace critns {

/// Version stamped into every JSON, JSONL and CSV output.
inline constexpr int kFormatVersion = 1;

/// FNV-1a 64-bit hash of the canonical (compact, key-sorted) dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& config);

/// Finite numbers pass through; infinities and NaN become the strings "inf", "-inf", "nan".
nlohmann::ordered_json json_number(double v);

}  // namespace critns
