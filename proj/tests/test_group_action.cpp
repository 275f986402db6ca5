#include <gtest/gtest.h>

#include <numeric>

#include "espdesign/group_action.hpp"
#include "oracles.hpp"

using namespace espd;
using oracle::circle;

namespace {

const GroupClosure& group(int m) {
    static std::map<int, GroupClosure> cache;
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, close_group(circle(m))).first;
    return it->second;
}

Permutation compose(std::span<const Point> p, std::span<const Point> r) {  // p after r
    Permutation out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = p[r[i]];
    return out;
}

}  // namespace

TEST(Moebius, GeneratorsPermuteTheCircle) {
    const UnitCircle& uc = circle(4);
    const GaloisField& f = uc.field();
    const Moebius inv = inversion(uc);
    EXPECT_EQ(inv.compose(f, inv), Moebius::identity(f));
    const Permutation rot = as_permutation(uc, rotation(uc, uc.beta()));
    EXPECT_EQ(permutation_order(rot), 17u);
    EXPECT_EQ(fixed_points(rot), 0);
    for (Elem c : type3_parameters(uc)) {
        const Permutation p = as_permutation(uc, type3(uc, c));
        std::vector<Point> sorted = p;
        std::sort(sorted.begin(), sorted.end());
        std::vector<Point> id(p.size());
        std::iota(id.begin(), id.end(), Point{0});
        EXPECT_EQ(sorted, id);
    }
    EXPECT_EQ(type3_parameters(uc).size(), 255u - 17u);
    EXPECT_THROW(type3(uc, uc[2]), std::invalid_argument);
    EXPECT_THROW(Moebius(f, kOne, kOne, kOne, kOne), std::invalid_argument);
}

TEST(Moebius, ComposeInverseAndKeys) {
    const UnitCircle& uc = circle(5);
    const GaloisField& f = uc.field();
    const Moebius g = type3(uc, type3_parameters(uc)[7]);
    const Moebius h = rotation(uc, uc[5]);
    EXPECT_EQ(g.compose(f, g.inverse(f)), Moebius::identity(f));
    const Moebius gh = g.compose(f, h);
    EXPECT_EQ(as_permutation(uc, gh), compose(as_permutation(uc, g), as_permutation(uc, h)));
    // scalar multiples normalize to the same key
    const Elem s = f.alpha();
    const Moebius scaled(f, f.mul(s, g.a()), f.mul(s, g.b()), f.mul(s, g.c()), f.mul(s, g.d()));
    EXPECT_EQ(scaled.key(), g.key());
    EXPECT_FALSE(g.apply(f, f.div(g.d(), g.c())).has_value());
}

TEST(Group, OrderAndTransitivityAtQ16) {
    const GroupClosure& g = group(4);
    EXPECT_EQ(g.order(), 4080u);
    EXPECT_EQ(ordered_triple_orbit_size(g), 17u * 16u * 15u);
    const auto c = character_check(g);
    EXPECT_EQ(c.violations, 0u);
    EXPECT_EQ(c.identity, 1u);
    EXPECT_EQ(c.identity + c.involutions + c.split + c.nonsplit, 4080u);
    EXPECT_EQ(c.involutions, 255u);  // q^2 - 1
    for (std::size_t e : involution_indices(g)) EXPECT_EQ(order2_fixed_points(g, e), 1);
}

TEST(Group, ShortFiveOrbitsAtQ32) {
    const GroupClosure& g = group(5);
    ASSERT_EQ(g.order(), 32736u);
    const OrbitReport r = orbit_partition(g, 5);
    std::uint64_t total = 0;
    for (const auto& o : r.orbits) total += o.length;
    EXPECT_EQ(total, binom(33, 5));
    const auto shorts = r.short_orbits();
    EXPECT_EQ(shorts.size(), 5u);
    for (std::size_t o : shorts) {
        EXPECT_EQ(r.orbits[o].stabilizer_order, 4u);
        EXPECT_TRUE(has_inverse_pair_rep(r, o, 33));
    }
    EXPECT_EQ(r.orbits.size(), 11u);
    const auto j = orbit_report_to_json(r);
    EXPECT_EQ(j["num_orbits"], 11);
}

TEST(Group, AlltopBlocksAreFixedByInvolutions) {
    const UnitCircle& uc = circle(5);
    const GroupClosure& g = group(5);
    const BlockSet a = alltop_design(uc, g);
    EXPECT_EQ(a.size(), 40920u);
    const auto inv = involution_indices(g);
    for (std::size_t i = 0; i < a.size(); i += 101) EXPECT_TRUE(fixed_by_involution(g, a[i], inv));
    EXPECT_THROW(alltop_design(circle(4), group(4)), std::invalid_argument);
}

TEST(Group, Invariance) {
    const UnitCircle& uc = circle(4);
    const GroupClosure& g = group(4);
    const BlockSet steiner = blockset_plain(uc, 5, 2);
    EXPECT_TRUE(invariance_check(g, steiner).invariant);
    BlockSet all(17, 3);
    for_each_subset(17, 3, [&](std::span<const Point> s) { all.append(s); });
    EXPECT_TRUE(invariance_check(g, all, 50).invariant);
    BlockSet one(17, 5);
    one.append(steiner[0]);
    const auto r = invariance_check(g, one);
    EXPECT_FALSE(r.invariant);
    ASSERT_TRUE(r.image.has_value());
    EXPECT_FALSE(std::ranges::equal(*r.image, steiner[0]));
}
