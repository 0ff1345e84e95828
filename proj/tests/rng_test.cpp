#include <algorithm>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "fmoe/rng.hpp"

namespace fmoe {
namespace {

// Known-answer vectors of the Random123 Philox4x64-10 reference.
TEST(Philox, ZeroKeyCounters) {
    const auto b0 = RngStream::generate({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(b0, (RngStream::Block{0x16554d9eca36314cULL, 0xdb20fe9d672d0fdcULL, 0xd7e772cee186176bULL,
                                    0x7e68b68aec7ba23bULL}));
    const auto b1 = RngStream::generate({1, 0, 0, 0}, {0, 0});
    EXPECT_EQ(b1, (RngStream::Block{0x02f4ba6408e4d89bULL, 0x3dd62b0b9ca8c5b2ULL, 0x1c8667a55d902e79ULL,
                                    0x907d7a052fd5b4dcULL}));
}

TEST(Philox, StreamMatchesRawBijection) {
    RngStream rng(42, 7);
    const std::uint64_t expected[] = {0x2fd1bc0d2c8697bbULL, 0x8ee17f67a549bba6ULL, 0x1bdce1f847e7df47ULL,
                                      0xe123b6bbe4e89f03ULL, 0xa64064f34e84b9a3ULL, 0xe287959a866a08fdULL,
                                      0x8dc181f009b96c03ULL, 0xf3f6001d4fa83454ULL};
    for (auto e : expected) EXPECT_EQ(rng(), e);
}

TEST(Philox, DiscardSkipsWholeBlocks) {
    RngStream rng(0xdeadbeef, 123);
    rng.discard(20);
    const std::uint64_t expected[] = {0x0c2f6c4fe19c1964ULL, 0x2b071b43f640732bULL, 0x30b25d43f7235d6dULL,
                                      0x12a26409f3884134ULL, 0xbb90fe764a069bdcULL, 0xc36b064ca281ec94ULL,
                                      0x3f5b549624ec1016ULL, 0x7ee97fe4c618feefULL};
    for (auto e : expected) EXPECT_EQ(rng(), e);
}

TEST(RngStream, SameKeySameSequence) {
    RngStream a(9, 3), b(9, 3);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
}

TEST(RngStream, DistinctStreamsDiffer) {
    RngStream a(9, 3), b(9, 4), c(10, 3);
    int same_ab = 0, same_ac = 0;
    for (int i = 0; i < 100; ++i) {
        const auto x = a();
        same_ab += x == b();
        same_ac += x == c();
    }
    EXPECT_EQ(same_ab, 0);
    EXPECT_EQ(same_ac, 0);
}

TEST(PortableShuffle, IsAPermutationAndDeterministic) {
    std::vector<int> v(50), w;
    std::iota(v.begin(), v.end(), 0);
    w = v;
    RngStream r1(5, 0), r2(5, 0);
    portable_shuffle(std::span<int>(v), r1);
    portable_shuffle(std::span<int>(w), r2);
    EXPECT_EQ(v, w);
    EXPECT_FALSE(std::is_sorted(v.begin(), v.end()));
    std::sort(v.begin(), v.end());
    for (int i = 0; i < 50; ++i) EXPECT_EQ(v[i], i);
}

TEST(PortableShuffle, FirstPositionRoughlyUniform) {
    std::vector<int> counts(4, 0);
    RngStream rng(77, 0);
    for (int trial = 0; trial < 40000; ++trial) {
        int v[4] = {0, 1, 2, 3};
        portable_shuffle(std::span<int>(v), rng);
        ++counts[v[0]];
    }
    for (int c : counts) EXPECT_NEAR(c, 10000, 400);
}

}  // namespace
}  // namespace fmoe
