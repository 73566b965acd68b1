#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
//
// A stream is identified by (key, stream id); block b of stream s is the
// bijection of the counter (b_lo, b_hi, s_lo, s_hi) under the key. Streams
// with different ids never overlap, so chunk k of a Monte Carlo run can be
// generated by any worker in any order.

#include <array>
#include <cstdint>
#include <limits>

namespace fsonoma::rng {

using Block = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

namespace detail {

inline constexpr std::uint32_t kM0 = 0xD2511F53u;
inline constexpr std::uint32_t kM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kW1 = 0xBB67AE85u;

constexpr Block round(const Block& x, const Key& k) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * x[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * x[2];
    return {static_cast<std::uint32_t>(p1 >> 32) ^ x[1] ^ k[0], static_cast<std::uint32_t>(p1),
            static_cast<std::uint32_t>(p0 >> 32) ^ x[3] ^ k[1], static_cast<std::uint32_t>(p0)};
}

}  // namespace detail

/// Ten-round Philox bijection of `counter` under `key`.
constexpr Block philox4x32_10(Block counter, Key key) {
    for (int r = 0; r < 10; ++r) {
        if (r > 0) {
            key[0] += detail::kW0;
            key[1] += detail::kW1;
        }
        counter = detail::round(counter, key);
    }
    return counter;
}

/// UniformRandomBitGenerator producing 64-bit words, two per Philox block.
class Philox {
public:
    using result_type = std::uint64_t;

    constexpr Philox(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, stream_(stream) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() {
        if (slot_ == 2) refill();
        const std::size_t i = static_cast<std::size_t>(2 * slot_++);
        return static_cast<std::uint64_t>(buffer_[i]) | (static_cast<std::uint64_t>(buffer_[i + 1]) << 32);
    }

    /// Skips `n` outputs.
    constexpr void discard(std::uint64_t n) {
        while (n > 0 && slot_ < 2) {
            ++slot_;
            --n;
        }
        block_ += n / 2;
        if (n % 2 == 1) {
            refill();
            slot_ = 1;
        }
    }

    [[nodiscard]] constexpr std::uint64_t stream() const noexcept { return stream_; }

private:
    constexpr void refill() {
        const Block ctr = {static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                           static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
        buffer_ = philox4x32_10(ctr, key_);
        ++block_;
        slot_ = 0;
    }

    Key key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    Block buffer_{};
    int slot_ = 2;  // 2 = buffer exhausted
};

}  // namespace fsonoma::rng
