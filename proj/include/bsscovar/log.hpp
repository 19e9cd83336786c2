#pragma once

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>

namespace bsscovar::log {

enum class Level { debug = 0, info = 1, warn = 2, error = 3, off = 4 };

// Level comes from BSSCOVAR_LOG (debug|info|warn|error|off); default warn.
inline Level threshold() {
    static const Level lvl = [] {
        const char* env = std::getenv("BSSCOVAR_LOG");
        if (!env) return Level::warn;
        std::string s(env);
        if (s == "debug") return Level::debug;
        if (s == "info") return Level::info;
        if (s == "warn") return Level::warn;
        if (s == "error") return Level::error;
        if (s == "off") return Level::off;
        return Level::warn;
    }();
    return lvl;
}

inline std::mutex& mutex() {
    static std::mutex m;
    return m;
}

inline void emit(Level lvl, const std::string& msg) {
    if (lvl < threshold()) return;
    static const char* names[] = {"debug", "info", "warn", "error"};
    std::lock_guard<std::mutex> lock(mutex());
    std::cerr << "[bsscovar:" << names[static_cast<int>(lvl)] << "] " << msg << "\n";
}

inline void debug(const std::string& msg) { emit(Level::debug, msg); }
inline void info(const std::string& msg) { emit(Level::info, msg); }
inline void warn(const std::string& msg) { emit(Level::warn, msg); }
inline void error(const std::string& msg) { emit(Level::error, msg); }

}  // namespace bsscovar::log
