#pragma once

#include <string>

namespace minpower {

enum class LogLevel { kError = 0, kInfo = 1, kDebug = 2 };

// Threshold from MINPOWER_LOG ({error|info|debug}, default error), read once.
LogLevel log_level();

// To stderr, prefixed with the level, when `lv` is within the threshold.
void log(LogLevel lv, const std::string& msg);

inline void log_error(const std::string& msg) { log(LogLevel::kError, msg); }
inline void log_info(const std::string& msg) { log(LogLevel::kInfo, msg); }
inline void log_debug(const std::string& msg) { log(LogLevel::kDebug, msg); }

}  // namespace minpower
