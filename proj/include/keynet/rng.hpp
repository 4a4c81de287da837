#pragma once

#include <cstdint>

namespace keynet::rng {

// 64-bit finalizer with full avalanche (splitmix64). Used both as the
// generator step and as the mixing primitive for key derivation, so any
// (master, label...) tuple yields an effectively independent stream.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Derive a child key from a master key and up to three labels. Counter-based:
// the same tuple always yields the same key, distinct tuples yield
// decorrelated keys. Labels are absorbed sequentially through the finalizer.
inline std::uint64_t derive(std::uint64_t master, std::uint64_t a,
                            std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t h = mix64(master);
    h = mix64(h ^ (a + 0x9E3779B97F4A7C15ULL));
    h = mix64(h ^ (b + 0xBF58476D1CE4E5B9ULL));
    h = mix64(h ^ (c + 0x94D049BB133111EBULL));
    return h;
}

// Minimal counter-based generator: state advances by the splitmix64 increment,
// output is the finalizer of the state. Cheap to construct, so every
// (node, trial, ...) context gets its own generator keyed by derive().
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) without modulo bias (rejection on the top band).
    std::uint64_t next_below(std::uint64_t bound) {
        // bound == 0 is a caller bug; keep the check cheap and explicit.
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

// Stream labels separating the independent randomness consumers that hang off
// one master seed. Values are arbitrary but frozen: changing them changes
// every sampled graph for a given seed.
enum Stream : std::uint64_t {
    kKeyRings = 1,
    kChannels = 2,
    kTrial = 3,
};

// Master seed for a model draw. Key-ring and channel randomness are carved
// out as independent derived streams so that subsystems can be sampled in any
// order (or lazily, per pair) with identical results.
struct Seed {
    std::uint64_t master = 0;

    // Per-node key-ring stream.
    std::uint64_t ring_key(std::uint64_t node) const {
        return derive(master, kKeyRings, node);
    }
    // Per-pair channel key; (i, j) must be ordered i < j by the caller.
    std::uint64_t pair_key(std::uint64_t i, std::uint64_t j) const {
        return derive(master, kChannels, (i << 32) | j);
    }
    // Per-trial sub-seed for experiment rows.
    std::uint64_t trial_key(std::uint64_t row, std::uint64_t trial) const {
        return derive(master, kTrial, row, trial);
    }
};

} // namespace keynet::rng
