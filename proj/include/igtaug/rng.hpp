#pragma once

// Self-contained deterministic RNG.  We deliberately avoid <random>
// distributions: their output is implementation-defined, and every draw
// here must be bit-identical across platforms and compiler versions.

#include <cstdint>
#include <string_view>
#include <vector>

namespace igtaug {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// One scramble round, used to finalize seed material.
inline std::uint64_t mix64(std::uint64_t x) {
    return splitmix64_next(x);
}

// Derive an independent substream seed from (global seed, label, id).
// FNV-1a over the byte material keeps the derivation order-sensitive, so
// ("ab","c") and ("a","bc") land in different streams.
inline std::uint64_t substream_seed(std::uint64_t global_seed,
                                    std::string_view label,
                                    std::string_view id) {
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV offset basis
    auto absorb = [&h](unsigned char byte) {
        h ^= byte;
        h *= 0x100000001b3ULL; // FNV prime
    };
    for (int i = 0; i < 8; ++i)
        absorb(static_cast<unsigned char>(global_seed >> (8 * i)));
    for (char c : label) absorb(static_cast<unsigned char>(c));
    absorb(0);
    for (char c : id) absorb(static_cast<unsigned char>(c));
    return mix64(h);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return splitmix64_next(state_); }

    // Unbiased draw in [0, n) via rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    // Fisher-Yates; identical results regardless of element type size.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    std::uint64_t state_;
};

} // namespace igtaug
