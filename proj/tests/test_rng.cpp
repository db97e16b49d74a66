#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "llrlab/normal.hpp"
#include "llrlab/rng.hpp"

using namespace llrlab;

// Known-answer vectors published with the Random123 reference implementation.
TEST(Philox, KnownAnswers) {
    EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}),
              (PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(SeededRng, SameStreamSameSequence) {
    SeededRng a(42, 7), b(42, 7);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
    EXPECT_EQ(a.position(), 1000u);
}

TEST(SeededRng, CopiesAreIndependentValues) {
    SeededRng a(1, 2);
    (void)a.next_u64();
    SeededRng b = a;
    EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(SeededRng, DistinctStreamsAndSeedsDiffer) {
    std::set<std::uint64_t> firsts;
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        for (std::uint64_t stream = 0; stream < 20; ++stream) firsts.insert(SeededRng(seed, stream).next_u64());
    EXPECT_EQ(firsts.size(), 400u);
    const SeededRng base(3, 4);
    EXPECT_NE(base.substream(1).stream_id(), base.substream(2).stream_id());
    EXPECT_EQ(base.substream(1).stream_id(), base.substream(1).stream_id());
}

TEST(SeededRng, StreamIdDerivationIsOrderSensitive) {
    EXPECT_NE(derive_stream_id({1, 2}), derive_stream_id({2, 1}));
    EXPECT_EQ(derive_stream_id({3, 7, 11}), derive_stream_id({3, 7, 11}));
}

TEST(SeededRng, UniformMoments) {
    SeededRng r(11, 0);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
        sum2 += u * u;
    }
    const double mean = sum / n, var = sum2 / n - mean * mean;
    EXPECT_NEAR(mean, 0.5, 5 * std::sqrt(1.0 / 12 / n));
    EXPECT_NEAR(var, 1.0 / 12, 0.002);
}

TEST(SeededRng, NormalsFollowStandardNormal) {
    SeededRng r(5, 9);
    std::vector<double> z(50000);
    for (auto& v : z) v = r.normal();
    std::sort(z.begin(), z.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double f = std_normal_cdf(z[i]);
        ks = std::max({ks, std::fabs(f - double(i) / z.size()), std::fabs(f - double(i + 1) / z.size())});
    }
    // Critical value at alpha = 0.001 is about 1.95 / sqrt(n).
    EXPECT_LT(ks, 1.95 / std::sqrt(double(z.size())));
}
