#pragma once

#include <cstdint>
#include <string_view>

namespace iqp {

uint64_t splitmix64(uint64_t x);
uint64_t fnv1a(std::string_view s);

// Counter-based generator. Output i is a pure function of (key, i), so a
// stream can be forked per work item without any shared state. The same seed
// and label give the same numbers on every platform.
class Rng {
   public:
    explicit Rng(uint64_t seed, std::string_view label = "") : key_(splitmix64(seed ^ fnv1a(label))) {}

    using result_type = uint64_t;
    static constexpr uint64_t min() { return 0; }
    static constexpr uint64_t max() { return ~uint64_t{0}; }
    uint64_t operator()() { return next(); }

    uint64_t next() { return splitmix64(key_ + 0x9E3779B97F4A7C15ull * ++counter_); }
    // Uniform in [0, 1) with 53 bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    // Uniform in [0, n). n must be positive.
    uint64_t below(uint64_t n);
    bool bit() { return next() >> 63; }

    // Independent stream for work item `index`.
    Rng fork(uint64_t index) const;

   private:
    Rng() = default;
    uint64_t key_ = 0;
    uint64_t counter_ = 0;
};

}  // namespace iqp
