#pragma once

#include <cstdint>
#include <limits>

namespace polsar {

/// Counter-based random bit source keyed by (seed, stream).
///
/// Output n of a source is a SplitMix64 finalizer applied to key + n * gamma,
/// so a draw depends only on the key and its index. Monte Carlo replication r
/// uses RandomSource(master_seed, r); results do not depend on which thread
/// runs which replication. Satisfies UniformRandomBitGenerator.
class RandomSource {
public:
    using result_type = std::uint64_t;

    RandomSource(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return mix(key_ + (++counter_) * kGamma); }

    /// An independent child stream; does not advance this source.
    RandomSource split(std::uint64_t child) const { return RandomSource(key_, child); }

    std::uint64_t draws() const { return counter_; }

private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace polsar
