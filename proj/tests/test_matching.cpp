#include <gtest/gtest.h>

#include "hil/matching.hpp"
#include "hil/persistence.hpp"
#include "oracles.hpp"

using namespace hil;

TEST(Extend, ClosureAtDeltaZero) {
    ClosedInterval ex = extend({0, 1}, 0);
    EXPECT_EQ(ex, (ClosedInterval{0, 1}));
}

TEST(Extend, ThickensByDelta) {
    EXPECT_EQ(extend({2, 3}, 1), (ClosedInterval{1, 4}));
    EXPECT_EQ(extend({0, kInf}, 2).hi, kInf);
}

TEST(Extend, Additive) {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        Interval iv{rng.uniform(0, 5), rng.uniform(5, 9)};
        double d1 = rng.uniform(0, 2), d2 = rng.uniform(0, 2);
        ClosedInterval once = extend({extend(iv, d1).lo, extend(iv, d1).hi}, d2);
        ClosedInterval direct = extend(iv, d1 + d2);
        EXPECT_NEAR(once.lo, direct.lo, 1e-12);
        EXPECT_NEAR(once.hi, direct.hi, 1e-12);
    }
}

TEST(ExistsDeltaMatching, AdmissiblePairIsMatched) {
    auto m = exists_delta_matching({{0, 2}}, {{1, 3}}, 1.0);
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ(m->matched, (std::vector<std::pair<int, int>>{{0, 1 - 1}}));
    EXPECT_TRUE(is_valid_matching({{0, 2}}, {{1, 3}}, *m));
}

TEST(ExistsDeltaMatching, ForcedBarAgainstEmptyIsInfeasible) {
    // [0,4) contains a closed interval of length 3.8, so it must be matched
    EXPECT_FALSE(exists_delta_matching({{0, 4}}, {}, 1.9).has_value());
    // at delta = 2 the bar is no longer forced
    EXPECT_TRUE(exists_delta_matching({{0, 4}}, {}, 2.0).has_value());
}

TEST(ExistsDeltaMatching, IdentityAtDeltaZero) {
    std::vector<Interval> c{{0, 1}, {2, kInf}, {0.5, 3}};
    auto m = exists_delta_matching(c, c, 0.0);
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ(m->matched.size(), 3u);
    EXPECT_TRUE(is_valid_matching(c, c, *m));
}

TEST(ExistsDeltaMatching, MonotoneInDelta) {
    Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Interval> c = oracles::random_bars(rng, 5);
        std::vector<Interval> d = oracles::random_bars(rng, 5);
        double delta = rng.uniform(0, 4);
        if (exists_delta_matching(c, d, delta)) {
            double larger = delta + rng.uniform(0.001, 2.0);
            EXPECT_TRUE(exists_delta_matching(c, d, larger).has_value());
        }
    }
}

TEST(Bottleneck, SingleBarAgainstEmptyCostsHalfLength) {
    BottleneckResult res = bottleneck(std::vector<Interval>{{0, 4}}, {});
    EXPECT_DOUBLE_EQ(res.value, 2.0);
    EXPECT_TRUE(res.matching.matched.empty());
}

TEST(Bottleneck, ShiftedBars) {
    BottleneckResult res = bottleneck(std::vector<Interval>{{0, 2}}, std::vector<Interval>{{1, 3}});
    EXPECT_DOUBLE_EQ(res.value, 1.0);
    EXPECT_EQ(res.matching.matched.size(), 1u);
}

TEST(Bottleneck, IdenticalBarcodesAtZero) {
    Barcode bc;
    bc.add(0, {0, 1.5});
    bc.add(0, {0, kInf});
    EXPECT_DOUBLE_EQ(bottleneck(bc, bc, 0).value, 0.0);
}

TEST(Bottleneck, MismatchedEssentialCountsAreInfinite) {
    EXPECT_TRUE(std::isinf(bottleneck(std::vector<Interval>{{0, kInf}}, {}).value));
    EXPECT_DOUBLE_EQ(bottleneck(std::vector<Interval>{{0, kInf}}, std::vector<Interval>{{5, kInf}}).value,
                     5.0);
}

TEST(Bottleneck, CertificateSoundness) {
    Rng rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Interval> c = oracles::random_bars(rng, 6);
        std::vector<Interval> d = oracles::random_bars(rng, 6);
        BottleneckResult res = bottleneck(c, d);
        if (std::isinf(res.value)) continue;
        EXPECT_TRUE(is_valid_matching(c, d, res.matching));
        EXPECT_DOUBLE_EQ(res.matching.delta, res.value);
    }
}

TEST(Bottleneck, MatchesExhaustiveOracleExactly) {
    Rng rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Interval> c = oracles::random_bars(rng, 6);
        std::vector<Interval> d = oracles::random_bars(rng, 6);
        double expected = oracles::bottleneck_exhaustive(c, d);
        double actual = bottleneck(c, d).value;
        EXPECT_EQ(actual, expected) << "trial " << trial;  // zero tolerance
    }
}

TEST(Bottleneck, PseudometricLaws) {
    Rng rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Interval> a = oracles::random_bars(rng, 4, 0.0);
        std::vector<Interval> b = oracles::random_bars(rng, 4, 0.0);
        std::vector<Interval> c = oracles::random_bars(rng, 4, 0.0);
        double ab = bottleneck(a, b).value;
        double ba = bottleneck(b, a).value;
        EXPECT_EQ(ab, ba);  // symmetry is exact
        double bc = bottleneck(b, c).value;
        double ac = bottleneck(a, c).value;
        EXPECT_LE(ac, ab + bc + 1e-9);
        EXPECT_DOUBLE_EQ(bottleneck(a, a).value, 0.0);
    }
}

TEST(InterleavingDistancePfd, WhiteheadBarAgainstZero) {
    // single bar [0, 2n+2) vs the zero module at n = 2: distance n+1 = 3
    EXPECT_DOUBLE_EQ(interleaving_distance_pfd({{0.0, 6.0}}, {}), 3.0);
    EXPECT_DOUBLE_EQ(interleaving_distance_pfd({{0.0, 6.0}}, {{0.0, 6.0}}), 0.0);
}

TEST(InterleavingDistancePfd, RandomBarcodesEqualBruteForce) {
    Rng rng(43);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Interval> m = oracles::random_bars(rng, 3);
        std::vector<Interval> n = oracles::random_bars(rng, 3);
        EXPECT_EQ(interleaving_distance_pfd(m, n), oracles::bottleneck_exhaustive(m, n));
    }
}

// stability axiom instance: d_B(H_k Sb(gamma), H_k Sb(kappa)) <= d_inf(gamma, kappa)
TEST(Stability, SublevelFunctionsOnOneComplex) {
    // fixed 20-simplex complex: 6 vertices, 9 edges, 5 triangles
    std::vector<Simplex> simplices{{0}, {1}, {2}, {3}, {4}, {5},
                                   {0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 4}, {4, 5},
                                   {0, 1, 2}, {1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}};
    ASSERT_EQ(simplices.size(), 20u);
    Rng rng(47);
    for (int trial = 0; trial < 20; ++trial) {
        SimplexFunction gamma = oracles::random_monotone_function(rng, simplices);
        SimplexFunction kappa = oracles::random_monotone_function(rng, simplices);
        double dinf = sup_norm_distance(gamma, kappa);
        Barcode bg = barcodes(sublevel_filtration(gamma), 1);
        Barcode bk = barcodes(sublevel_filtration(kappa), 1);
        for (int k = 0; k <= 1; ++k)
            EXPECT_LE(bottleneck(bg, bk, k).value, dinf + 1e-9) << "degree " << k;
    }
}
