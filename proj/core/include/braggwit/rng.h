// Copyright 2026 The braggwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace braggwit {

/// Philox4x32-10 counter-based generator.
///
/// The 64-bit seed is the key; the 128-bit counter is split into a 64-bit
/// block index and a 64-bit stream id, so independent sub-streams are obtained
/// by construction rather than by jumping. Satisfies
/// UniformRandomBitGenerator with 32-bit outputs.
class Philox4x32 {
   public:
    using result_type = std::uint32_t;
    using Block = std::array<std::uint32_t, 4>;

    explicit Philox4x32(std::uint64_t seed, std::uint64_t stream = 0) : key_{lo(seed), hi(seed)}, stream_(stream) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        if (used_ == 4) {
            buffer_ = generate(block_++);
            used_ = 0;
        }
        return buffer_[used_++];
    }

    /// The raw bijection: ten rounds over (counter, key).
    static Block bijection(Block counter, std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            std::uint64_t p0 = std::uint64_t{kMul0} * counter[0];
            std::uint64_t p1 = std::uint64_t{kMul1} * counter[2];
            counter = {hi(p1) ^ counter[1] ^ key[0], lo(p1), hi(p0) ^ counter[3] ^ key[1], lo(p0)};
        }
        return counter;
    }

   private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

    static constexpr std::uint32_t lo(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
    static constexpr std::uint32_t hi(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

    Block generate(std::uint64_t block) const {
        return bijection({lo(block), hi(block), lo(stream_), hi(stream_)}, key_);
    }

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    Block buffer_{};
    int used_ = 4;
};

/// Uniform double in [0, 1) from 53 random bits.
template <class Engine>
double uniform01(Engine& engine) {
    const std::uint64_t high = engine();
    const std::uint64_t low = engine();
    std::uint64_t bits = (high << 32) | low;
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace braggwit
