#include "icisim/log.hpp"

#include <cstdlib>
#include <iostream>
#include <string_view>

namespace icisim {

LogLevel log_level() {
    const char* env = std::getenv("ICISIM_LOG");
    if (env == nullptr) return LogLevel::Warn;
    const std::string_view v(env);
    if (v == "error") return LogLevel::Error;
    if (v == "info") return LogLevel::Info;
    if (v == "debug") return LogLevel::Debug;
    return LogLevel::Warn;
}

void log(LogLevel level, const std::string& message) {
    static constexpr const char* kNames[] = {"error", "warn", "info", "debug"};
    if (static_cast<int>(level) <= static_cast<int>(log_level())) {
        std::cerr << "[icisim " << kNames[static_cast<int>(level)] << "] " << message << '\n';
    }
}

}  // namespace icisim
