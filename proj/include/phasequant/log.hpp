#ifndef PHASEQUANT_LOG_HPP
#define PHASEQUANT_LOG_HPP

#include <cstdlib>
#include <iostream>
#include <string>

namespace phasequant {

// Verbosity is controlled by the PHASEQUANT_LOG environment variable:
// unset/"quiet" -> silence, "info" -> notes, "debug" -> everything.
inline int log_level() {
    static const int level = [] {
        const char* v = std::getenv("PHASEQUANT_LOG");
        if (!v) return 0;
        const std::string s(v);
        if (s == "debug") return 2;
        if (s == "info") return 1;
        return 0;
    }();
    return level;
}

inline void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[phasequant] " << msg << '\n';
}

inline void log_debug(const std::string& msg) {
    if (log_level() >= 2) std::cerr << "[phasequant:debug] " << msg << '\n';
}

} // namespace phasequant

#endif
