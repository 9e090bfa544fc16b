#pragma once

#include <string>

namespace veisim {

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

// Threshold from the VEISIM_LOG environment variable ("error", "warn",
// "info", "debug" or 0..3), read once per process. Default: Warn.
LogLevel log_level();

bool log_enabled(LogLevel level);

// Writes "veisim [level] message" to stderr when `level` is enabled.
void log(LogLevel level, const std::string& message);

}  // namespace veisim
