// Copyright 2026 The qtomo Authors
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

#include <gtest/gtest.h>

#include "qtomo/common.hpp"
#include "qtomo/identities.hpp"

namespace qtomo {
namespace {

TEST(IdentitySuite, PassesForThreeSeeds) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto rep = run_identity_suite(seed);
        EXPECT_GE(rep.checks.size(), 15u);
        for (const auto &c : rep.checks) {
            EXPECT_TRUE(c.passed()) << c.name << " seed " << seed << " deviation " << c.max_deviation;
            EXPECT_GT(c.cases, 0) << c.name;
        }
        EXPECT_TRUE(rep.all_passed());
    }
}

TEST(IdentitySuite, CorruptedTransferFails) {
    const auto rep = run_identity_suite(1, Fault::kCorruptTransfer);
    EXPECT_FALSE(rep.all_passed());
    EXPECT_FALSE(rep.check("two_meter_transfer_vs_simulation").passed());
    EXPECT_FALSE(rep.check("circuit_transfer_vs_simulation").passed());
    EXPECT_TRUE(rep.check("coefficient_forms").passed());
}

TEST(IdentitySuite, SeedStable) {
    const auto a = run_identity_suite(5), b = run_identity_suite(5);
    ASSERT_EQ(a.checks.size(), b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) {
        EXPECT_EQ(a.checks[i].max_deviation, b.checks[i].max_deviation) << a.checks[i].name;
    }
    EXPECT_THROW(a.check("nope"), ValidationError);
}

}  // namespace
}  // namespace qtomo
