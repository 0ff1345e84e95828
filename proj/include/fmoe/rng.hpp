#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>

#include <boost/random/uniform_int_distribution.hpp>

namespace fmoe {

/// Counter-based Philox4x64-10 generator keyed by (seed, stream_id).
///
/// Distinct (seed, stream_id) pairs select independent streams without any
/// shared state, so replications and blocks can be drawn concurrently and
/// reproducibly. Satisfies UniformRandomBitGenerator.
class RngStream {
public:
    using result_type = std::uint64_t;
    using Block = std::array<std::uint64_t, 4>;

    RngStream(std::uint64_t seed, std::uint64_t stream_id) : key_{seed, stream_id} {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    std::uint64_t seed() const { return key_[0]; }
    std::uint64_t stream_id() const { return key_[1]; }

    result_type operator()() {
        if (pos_ == 4) {
            buffer_ = generate(counter_, key_);
            ++counter_[0];
            if (counter_[0] == 0) ++counter_[1];
            pos_ = 0;
        }
        return buffer_[pos_++];
    }

    void discard(unsigned long long z) {
        for (; z > 0; --z) (*this)();
    }

    /// The raw Philox4x64-10 bijection.
    static Block generate(Block counter, std::array<std::uint64_t, 2> key) {
        constexpr std::uint64_t m0 = 0xD2E7470EE14C6C93ULL;
        constexpr std::uint64_t m1 = 0xCA5A826395121157ULL;
        constexpr std::uint64_t w0 = 0x9E3779B97F4A7C15ULL;
        constexpr std::uint64_t w1 = 0xBB67AE8584CAA73BULL;
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += w0;
                key[1] += w1;
            }
            const unsigned __int128 p0 = static_cast<unsigned __int128>(m0) * counter[0];
            const unsigned __int128 p1 = static_cast<unsigned __int128>(m1) * counter[2];
            const auto hi0 = static_cast<std::uint64_t>(p0 >> 64);
            const auto lo0 = static_cast<std::uint64_t>(p0);
            const auto hi1 = static_cast<std::uint64_t>(p1 >> 64);
            const auto lo1 = static_cast<std::uint64_t>(p1);
            counter = {hi1 ^ counter[1] ^ key[0], lo1, hi0 ^ counter[3] ^ key[1], lo0};
        }
        return counter;
    }

private:
    std::array<std::uint64_t, 2> key_;
    Block counter_{0, 0, 0, 0};
    Block buffer_{};
    int pos_ = 4;
};

/// Fisher–Yates shuffle with a platform-independent index distribution
/// (std::shuffle's algorithm is implementation-defined).
template <class T>
void portable_shuffle(std::span<T> items, RngStream& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        boost::random::uniform_int_distribution<std::size_t> pick(0, i - 1);
        std::swap(items[i - 1], items[pick(rng)]);
    }
}

}  // namespace fmoe
