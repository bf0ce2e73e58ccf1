#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace bandvar {

/**
 * Counter-based random stream.
 *
 * Output n of a stream is mix(key + n * golden), the SplitMix64 finaliser
 * applied to a counter, so a stream is fully described by its 64-bit key and
 * position. Substreams derive new keys from (parent key, name, index), which
 * lets every replication, bootstrap replicate or component draw from its own
 * sequence no matter which thread runs it.
 *
 * Satisfies UniformRandomBitGenerator, so the std distributions work on it.
 */
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0) : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return mix(key_ + (counter_++) * kGolden); }

    /// Independent stream keyed by a name, e.g. "coeffs" or "innovations".
    Rng substream(std::string_view name, std::uint64_t index = 0) const;

    /// Independent stream keyed by an index, e.g. a replication number.
    Rng split(std::uint64_t index) const { return substream("", index); }

    double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(*this); }
    double exponential() { return std::exponential_distribution<double>(1.0)(*this); }

    std::uint64_t key() const noexcept { return key_; }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace bandvar
