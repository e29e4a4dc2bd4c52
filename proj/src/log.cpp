#include "minpower/log.hpp"

#include <cstdlib>
#include <iostream>

namespace minpower {

LogLevel log_level() {
  static const LogLevel lv = [] {
    const char* env = std::getenv("MINPOWER_LOG");
    if (!env) return LogLevel::kError;
    const std::string v(env);
    if (v == "debug") return LogLevel::kDebug;
    if (v == "info") return LogLevel::kInfo;
    return LogLevel::kError;
  }();
  return lv;
}

void log(LogLevel lv, const std::string& msg) {
  if (static_cast<int>(lv) > static_cast<int>(log_level())) return;
  const char* tag = lv == LogLevel::kError  ? "error"
                    : lv == LogLevel::kInfo ? "info"
                                            : "debug";
  std::cerr << "[minpower:" << tag << "] " << msg << "\n";
}

}  // namespace minpower
