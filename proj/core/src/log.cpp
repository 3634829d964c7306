#include "pce/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <optional>

namespace pce {

namespace {

std::optional<LogLevel> g_override;
std::mutex g_mutex;

LogLevel level_from_env() {
    const char* env = std::getenv("PCE_LOG");
    if (env == nullptr) return LogLevel::Warn;
    const std::string v(env);
    if (v == "error") return LogLevel::Error;
    if (v == "warn") return LogLevel::Warn;
    if (v == "info") return LogLevel::Info;
    if (v == "debug") return LogLevel::Debug;
    return LogLevel::Warn;
}

const char* level_name(LogLevel level) {
    switch (level) {
    case LogLevel::Error: return "error";
    case LogLevel::Warn: return "warn";
    case LogLevel::Info: return "info";
    case LogLevel::Debug: return "debug";
    }
    return "?";
}

} // namespace

LogLevel log_level() {
    std::lock_guard lock(g_mutex);
    if (g_override) return *g_override;
    static const LogLevel env_level = level_from_env();
    return env_level;
}

void set_log_level(LogLevel level) {
    std::lock_guard lock(g_mutex);
    g_override = level;
}

void log_message(LogLevel level, const std::string& module,
                 const std::string& message) {
    if (static_cast<int>(level) > static_cast<int>(log_level())) return;
    std::lock_guard lock(g_mutex);
    std::cerr << "[pce][" << level_name(level) << "] " << module << ": "
              << message << "\n";
}

} // namespace pce
