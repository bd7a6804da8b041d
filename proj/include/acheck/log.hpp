#pragma once

#include <string>

namespace acheck::log {

enum class Level { Error = 0, Warn = 1, Info = 2, Debug = 3 };

// Initialized from ACHECK_LOG (error|warn|info|debug, default warn).
Level level();
void set_level(Level l);
void write(Level l, const std::string& msg);

inline void error(const std::string& m) { write(Level::Error, m); }
inline void warn(const std::string& m) { write(Level::Warn, m); }
inline void info(const std::string& m) { write(Level::Info, m); }
inline void debug(const std::string& m) { write(Level::Debug, m); }

}  // namespace acheck::log
