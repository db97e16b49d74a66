#include "llrlab/rng.hpp"

#include "llrlab/normal.hpp"

namespace llrlab {

namespace {
constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(prod >> 32);
    lo = static_cast<std::uint32_t>(prod);
}
}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
    }
    return ctr;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t derive_stream_id(std::initializer_list<std::uint64_t> parts) noexcept {
    std::uint64_t h = 0x6A09E667F3BCC909ull;
    for (std::uint64_t p : parts) h = mix64(h ^ mix64(p));
    return h;
}

std::uint64_t SeededRng::next_u64() noexcept {
    const std::uint64_t block = position_ >> 1;
    if (block != block_index_) {
        const PhiloxCounter ctr = {static_cast<std::uint32_t>(block),
                                   static_cast<std::uint32_t>(block >> 32),
                                   static_cast<std::uint32_t>(stream_id_),
                                   static_cast<std::uint32_t>(stream_id_ >> 32)};
        const PhiloxKey key = {static_cast<std::uint32_t>(seed_),
                               static_cast<std::uint32_t>(seed_ >> 32)};
        const auto out = philox4x32_10(ctr, key);
        block_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
        block_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
        block_index_ = block;
    }
    return block_[position_++ & 1];
}

double SeededRng::uniform() noexcept {
    // (k + 0.5) / 2^53 never hits 0 or 1.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double SeededRng::normal() { return std_normal_quantile(uniform()); }

}  // namespace llrlab
