#include "critns/log.hpp"

#include <iostream>
#include <mutex>

namespace critns {

namespace {
std::mutex& handler_mutex() {
  static std::mutex mu;
  return mu;
}
WarningHandler& handler() {
  static WarningHandler h = [](const std::string& msg) { std::cerr << "critns: warning: " << msg << '\n'; };
  return h;
}
}  // namespace

WarningHandler set_warning_handler(WarningHandler h) {
  std::lock_guard lock(handler_mutex());
  std::swap(handler(), h);
  return h;
}

void warn(const std::string& message) {
  std::lock_guard lock(handler_mutex());
  if (handler()) handler()(message);
}

}  // namespace critns
