#pragma once
// Counter-based random streams (Philox4x32-10).
//
// A SeededRng is a value: (seed, stream_id) selects an independent stream and the position
// counter advances locally. Output is a pure function of (seed, stream_id, position), so
// identical streams reproduce bit-for-bit on every platform and under any thread schedule.

#include <array>
#include <cstdint>
#include <initializer_list>

namespace llrlab {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

// Ten-round Philox 4x32 bijection.
PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept;

// SplitMix64 finalizer; used to hash structured identifiers into stream ids.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Order-sensitive hash of a tuple of integers, e.g. (p, n, trial, class).
std::uint64_t derive_stream_id(std::initializer_list<std::uint64_t> parts) noexcept;

class SeededRng {
public:
    SeededRng(std::uint64_t seed, std::uint64_t stream_id) noexcept
        : seed_(seed), stream_id_(stream_id) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }
    std::uint64_t position() const noexcept { return position_; }

    // A fresh stream under the same seed, keyed by this stream id and `tag`.
    SeededRng substream(std::uint64_t tag) const noexcept {
        return SeededRng(seed_, derive_stream_id({stream_id_, tag}));
    }

    std::uint64_t next_u64() noexcept;

    // Uniform on the open interval (0, 1) with 53 random bits.
    double uniform() noexcept;

    // Standard normal via inverse-CDF transform: exactly one uniform per variate.
    double normal();

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t position_ = 0;  // counts 64-bit outputs
    std::array<std::uint64_t, 2> block_{};
    std::uint64_t block_index_ = ~std::uint64_t{0};
};

}  // namespace llrlab
