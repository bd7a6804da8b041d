#include "acheck/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>

namespace acheck::log {

namespace {

Level from_env() {
  const char* env = std::getenv("ACHECK_LOG");
  if (!env) return Level::Warn;
  std::string s(env);
  if (s == "error") return Level::Error;
  if (s == "info") return Level::Info;
  if (s == "debug") return Level::Debug;
  return Level::Warn;
}

std::atomic<int>& current() {
  static std::atomic<int> l{static_cast<int>(from_env())};
  return l;
}

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

const char* tag(Level l) {
  switch (l) {
    case Level::Error: return "error";
    case Level::Warn: return "warn";
    case Level::Info: return "info";
    case Level::Debug: return "debug";
  }
  return "";
}

}  // namespace

Level level() { return static_cast<Level>(current().load()); }
void set_level(Level l) { current().store(static_cast<int>(l)); }

void write(Level l, const std::string& msg) {
  if (static_cast<int>(l) > current().load()) return;
  std::lock_guard<std::mutex> lock(sink_mutex());
  std::cerr << "[acheck " << tag(l) << "] " << msg << '\n';
}

}  // namespace acheck::log
