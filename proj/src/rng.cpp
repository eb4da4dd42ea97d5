#include "iqp/rng.hpp"

namespace iqp {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

uint64_t Rng::below(uint64_t n) {
    // Rejection on the top of the range keeps the result exactly uniform.
    uint64_t limit = max() - max() % n;
    uint64_t v;
    do {
        v = next();
    } while (v >= limit);
    return v % n;
}

Rng Rng::fork(uint64_t index) const {
    Rng r;
    r.key_ = splitmix64(key_ ^ splitmix64(index + 0xD1B54A32D192ED03ull));
    return r;
}

}  // namespace iqp
