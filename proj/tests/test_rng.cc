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

#include "braggwit/rng.h"

#include <array>

#include <gtest/gtest.h>

using braggwit::Philox4x32;

TEST(rng, philox_known_answers) {
    using B = Philox4x32::Block;
    EXPECT_EQ(Philox4x32::bijection(B{0, 0, 0, 0}, {0, 0}), (B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(Philox4x32::bijection(B{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(Philox4x32::bijection(B{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(rng, streams_are_independent_and_repeatable) {
    Philox4x32 a(5, 0), b(5, 0), c(5, 1);
    for (int i = 0; i < 10; ++i) {
        auto x = a();
        EXPECT_EQ(x, b());
        EXPECT_NE(x, c());
    }
}

TEST(rng, uniform01_range) {
    Philox4x32 e(1);
    for (int i = 0; i < 1000; ++i) {
        double u = braggwit::uniform01(e);
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}
