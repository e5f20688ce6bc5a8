#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace sslcl {

/// SplitMix64 finalizer, used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t hash_tag(std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Seed of the stream owned by (master seed, handle, tag).
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t handle, std::string_view tag) {
    return mix64(mix64(master) ^ mix64(handle + 0x632be59bd9b4e019ULL) ^ hash_tag(tag));
}

/// Deterministic random stream. The bounded draws are implemented here rather
/// than with std distributions so that output is identical across standard
/// library implementations.
class Rng {
public:
    Rng() : engine_(0) {}
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    Rng(std::uint64_t master, std::uint64_t handle, std::string_view tag)
        : engine_(stream_seed(master, handle, tag)) {}

    std::uint64_t next() { return engine_(); }

    bool coin() { return (engine_() >> 63) != 0; }

    /// Uniform integer in [0, n). Requires n > 0.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % n + 1) % n;
        std::uint64_t x = engine_();
        while (x > limit) x = engine_();
        return x % n;
    }

    /// Uniform integer in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    /// Uniform double in [0, 1) with 53 bits of precision.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace sslcl
