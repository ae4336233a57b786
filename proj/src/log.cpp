#include "jqf/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>

namespace jqf {

namespace {

LogLevel parse_level(const char* s) {
  if (s == nullptr) return LogLevel::Warn;
  const std::string v(s);
  if (v == "error") return LogLevel::Error;
  if (v == "warn") return LogLevel::Warn;
  if (v == "info") return LogLevel::Info;
  if (v == "debug") return LogLevel::Debug;
  return LogLevel::Warn;
}

const char* tag(LogLevel level) {
  switch (level) {
    case LogLevel::Error: return "error";
    case LogLevel::Warn: return "warn";
    case LogLevel::Info: return "info";
    case LogLevel::Debug: return "debug";
  }
  return "?";
}

std::mutex g_log_mutex;

}  // namespace

LogLevel log_threshold() {
  static const LogLevel level = parse_level(std::getenv("JQF_SIM_LOG"));
  return level;
}

void log(LogLevel level, const std::string& message) {
  if (static_cast<int>(level) > static_cast<int>(log_threshold())) return;
  std::lock_guard<std::mutex> lock(g_log_mutex);
  std::cerr << "[" << tag(level) << "] " << message << "\n";
}

}  // namespace jqf
