#include "aeroarm/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace aeroarm::logging {

namespace {

Level parse_env() {
    const char* env = std::getenv("SIM_LOG_LEVEL");
    if (env == nullptr) return Level::warn;
    if (std::strcmp(env, "error") == 0) return Level::error;
    if (std::strcmp(env, "warn") == 0) return Level::warn;
    if (std::strcmp(env, "info") == 0) return Level::info;
    if (std::strcmp(env, "debug") == 0) return Level::debug;
    return Level::warn;
}

const char* name(Level level) {
    switch (level) {
        case Level::error: return "error";
        case Level::warn: return "warn";
        case Level::info: return "info";
        case Level::debug: return "debug";
    }
    return "?";
}

}  // namespace

Level threshold() {
    static const Level level = parse_env();
    return level;
}

bool enabled(Level level) { return static_cast<int>(level) <= static_cast<int>(threshold()); }

void write(Level level, const std::string& message) {
    if (!enabled(level)) return;
    std::fprintf(stderr, "[sim:%s] %s\n", name(level), message.c_str());
}

}  // namespace aeroarm::logging
