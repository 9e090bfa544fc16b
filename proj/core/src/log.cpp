#include "veisim/log.hpp"

#include <cstdlib>
#include <iostream>

namespace veisim {

namespace {

LogLevel parse_level(const char* text) {
  if (text == nullptr) return LogLevel::Warn;
  const std::string s(text);
  if (s == "error" || s == "0") return LogLevel::Error;
  if (s == "warn" || s == "1") return LogLevel::Warn;
  if (s == "info" || s == "2") return LogLevel::Info;
  if (s == "debug" || s == "3") return LogLevel::Debug;
  return LogLevel::Warn;
}

const char* level_name(LogLevel level) {
  switch (level) {
    case LogLevel::Error: return "error";
    case LogLevel::Warn: return "warn";
    case LogLevel::Info: return "info";
    case LogLevel::Debug: return "debug";
  }
  return "warn";
}

}  // namespace

LogLevel log_level() {
  static const LogLevel level = parse_level(std::getenv("VEISIM_LOG"));
  return level;
}

bool log_enabled(LogLevel level) { return static_cast<int>(level) <= static_cast<int>(log_level()); }

void log(LogLevel level, const std::string& message) {
  if (!log_enabled(level)) return;
  std::cerr << "veisim [" << level_name(level) << "] " << message << "\n";
}

}  // namespace veisim
