#include "equisym/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <string>

namespace equisym::log {

namespace {

Level parse_env() {
  const char* env = std::getenv("EQUISYM_LOG");
  if (!env) return Level::warn;
  std::string v(env);
  if (v == "error") return Level::error;
  if (v == "warn") return Level::warn;
  if (v == "info") return Level::info;
  if (v == "debug") return Level::debug;
  return Level::warn;
}

const char* tag(Level lvl) {
  switch (lvl) {
    case Level::error: return "error";
    case Level::warn: return "warn";
    case Level::info: return "info";
    case Level::debug: return "debug";
  }
  return "?";
}

std::mutex g_mutex;

}  // namespace

Level level() {
  static const Level lvl = parse_env();
  return lvl;
}

void write(Level lvl, std::string_view msg) {
  if (static_cast<int>(lvl) > static_cast<int>(level())) return;
  std::lock_guard<std::mutex> lock(g_mutex);
  std::fprintf(stderr, "[equisym %s] %.*s\n", tag(lvl), static_cast<int>(msg.size()), msg.data());
}

}  // namespace equisym::log
