#pragma once

#include <string>

namespace aeroarm::logging {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

/// Threshold parsed once from the SIM_LOG_LEVEL environment variable
/// (error|warn|info|debug); unset or unrecognized values mean warn.
Level threshold();

bool enabled(Level level);

/// Writes "[sim:<level>] <message>" to stderr when the level is enabled.
/// Diagnostics never touch stdout or output files.
void write(Level level, const std::string& message);

inline void error(const std::string& m) { write(Level::error, m); }
inline void warn(const std::string& m) { write(Level::warn, m); }
inline void info(const std::string& m) { write(Level::info, m); }
inline void debug(const std::string& m) { write(Level::debug, m); }

}  // namespace aeroarm::logging
