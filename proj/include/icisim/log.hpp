#pragma once

#include <string>

namespace icisim {

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

/// Level from ICISIM_LOG (error|warn|info|debug); defaults to warn.
LogLevel log_level();

/// Writes to stderr when `level` is enabled.
void log(LogLevel level, const std::string& message);

}  // namespace icisim
