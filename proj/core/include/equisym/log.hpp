#pragma once

#include <string_view>

namespace equisym::log {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

/// Active level, initialized once from EQUISYM_LOG (error|warn|info|debug).
/// Unset or unrecognized values default to warn.
Level level();

void write(Level lvl, std::string_view msg);

inline void error(std::string_view msg) { write(Level::error, msg); }
inline void warn(std::string_view msg) { write(Level::warn, msg); }
inline void info(std::string_view msg) { write(Level::info, msg); }
inline void debug(std::string_view msg) { write(Level::debug, msg); }

}  // namespace equisym::log
