#pragma once

#include <string>

namespace pce {

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

// Level comes from the PCE_LOG env var (error|warn|info|debug, default warn)
// unless overridden programmatically. Messages go to stderr as
// "[pce][level] module: message".
LogLevel log_level();
void set_log_level(LogLevel level);

void log_message(LogLevel level, const std::string& module,
                 const std::string& message);

inline void log_error(const std::string& module, const std::string& message) {
    log_message(LogLevel::Error, module, message);
}
inline void log_warn(const std::string& module, const std::string& message) {
    log_message(LogLevel::Warn, module, message);
}
inline void log_info(const std::string& module, const std::string& message) {
    log_message(LogLevel::Info, module, message);
}
inline void log_debug(const std::string& module, const std::string& message) {
    log_message(LogLevel::Debug, module, message);
}

} // namespace pce
