#include "csl/config.hpp"

#include <cstdlib>
#include <string>

namespace csl {

static Capacity make_default() {
    Capacity cap;
    if (const char* env = std::getenv("CSL_CAPACITY")) {
        try {
            long long v = std::stoll(env);
            if (v > 0) cap.enumeration_limit = static_cast<std::size_t>(v);
        } catch (...) {
            // ignore malformed values, keep defaults
        }
    }
    return cap;
}

Capacity& capacity() {
    static Capacity cap = make_default();
    return cap;
}

} // namespace csl
