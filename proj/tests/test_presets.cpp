#include <gtest/gtest.h>

#include "oracles.hpp"
#include "testing.hpp"

using namespace carpetcut;
using testing_util::error_of;

namespace {

// Membership read off cell by cell: in the lower half the even columns and the
// last column are kept, in the upper half the odd columns and the first one.
std::vector<Digit> family_by_membership(int m, bool even) {
    const int n = 2 * m;
    std::vector<Digit> out;
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            const bool lower = y < m;
            bool keep = lower ? (x % 2 == 0 || x == n - 1) : (x % 2 == 1 || x == 0);
            if (even && !lower && x == n - 2) keep = true;
            if (keep) out.push_back({x, y});
        }
    }
    return out;
}

} // namespace

TEST(Presets, Names) {
    const auto names = preset_names();
    EXPECT_EQ(names.size(), 7U);
    for (const auto& name : names) {
        const std::string id = name.ends_with(":m") ? name.substr(0, name.size() - 1) + "4" : name;
        EXPECT_NO_THROW(resolve_preset(id)) << id;
    }
}

TEST(Presets, FixedDigitSets) {
    EXPECT_EQ(resolve_preset("sierpinski").size(), 8U);
    EXPECT_FALSE(resolve_preset("sierpinski").contains(1, 1));
    EXPECT_EQ(resolve_preset("goodcp").digits(),
              (std::vector<Digit>{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {2, 0}, {2, 1}, {2, 2}}));
    EXPECT_EQ(resolve_preset("countable").digits(),
              (std::vector<Digit>{{0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}}));
    EXPECT_EQ(resolve_preset("segment").digits(), (std::vector<Digit>{{0, 0}, {1, 0}, {2, 0}}));
    EXPECT_EQ(resolve_preset("diag3").digits(), (std::vector<Digit>{{0, 0}, {1, 1}, {2, 2}}));
}

TEST(Presets, OddFamilyThree) {
    const auto spec = resolve_preset("oddcuts:3");
    EXPECT_EQ(spec.base(), 6);
    EXPECT_EQ(spec.size(), 24U);
    for (const Digit d : {Digit{0, 3}, Digit{5, 0}, Digit{2, 2}, Digit{3, 3}}) EXPECT_TRUE(spec.contains(d));
    EXPECT_FALSE(spec.contains(1, 0));
    EXPECT_FALSE(spec.contains(4, 3));
}

TEST(Presets, FamiliesMatchMembershipRule) {
    for (int m = 3; m <= 9; ++m) {
        for (bool even : {false, true}) {
            const auto spec = resolve_preset((even ? "evencuts:" : "oddcuts:") + std::to_string(m));
            EXPECT_EQ(spec, validate_spec(2 * m, family_by_membership(m, even))) << m;
            const std::size_t expected = 2U * m * m + 2U * m + (even ? m : 0);
            EXPECT_EQ(spec.size(), expected) << m;
        }
    }
}

TEST(Presets, Errors) {
    EXPECT_EQ(error_of([] { resolve_preset("menger"); }), ErrorCode::UnknownPreset);
    EXPECT_EQ(error_of([] { resolve_preset(""); }), ErrorCode::UnknownPreset);
    EXPECT_EQ(error_of([] { resolve_preset("oddcuts:2"); }), ErrorCode::BadParameter);
    EXPECT_EQ(error_of([] { resolve_preset("evencuts:-4"); }), ErrorCode::BadParameter);
    EXPECT_EQ(error_of([] { resolve_preset("oddcuts"); }), ErrorCode::BadParameter);
    EXPECT_EQ(error_of([] { resolve_preset("oddcuts:x"); }), ErrorCode::BadParameter);
    EXPECT_EQ(error_of([] { resolve_preset("evencuts:3x"); }), ErrorCode::BadParameter);
}

TEST(Presets, ConnectivityAndFragility) {
    for (int m = 3; m <= 5; ++m) {
        for (const std::string family : {"oddcuts:", "evencuts:"}) {
            const auto spec = resolve_preset(family + std::to_string(m));
            EXPECT_TRUE(is_connected_gsc(spec)) << family << m;
            EXPECT_TRUE(is_fragile(spec)) << family << m;
            if (m == 3) EXPECT_TRUE(oracle::fragile_by_bipartitions(spec));
        }
    }
    for (const std::string name : {"goodcp", "sierpinski"}) {
        const auto spec = resolve_preset(name);
        EXPECT_TRUE(is_connected_gsc(spec));
        EXPECT_FALSE(is_fragile(spec));
        EXPECT_FALSE(oracle::fragile_by_bipartitions(spec));
    }
}
