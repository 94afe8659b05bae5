#pragma once

#include <functional>
#include <string>

namespace critns {

using WarningHandler = std::function<void(const std::string&)>;

/// Replace the process-wide warning sink (default writes to stderr). Returns the old one.
WarningHandler set_warning_handler(WarningHandler handler);
void warn(const std::string& message);

}  // namespace critns
