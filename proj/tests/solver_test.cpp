#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "test_data.hpp"
#include "wangbars/reduction.hpp"
#include "wangbars/solver.hpp"

using namespace wangbars;

namespace {

BarSet all_c_bar() { return BarSet({Bar{"c", {"c"}, {"c"}, "c", "c"}}); }
BarSet mismatched_bar() { return BarSet({Bar{"t", {"a"}, {"b"}, "c", "c"}}); }

BarSet random_bars(std::mt19937& rng, int count, int max_len, int colors) {
    std::uniform_int_distribution<int> len(1, max_len), col(0, colors - 1);
    std::vector<Bar> bars;
    for (int i = 0; i < count; ++i) {
        Bar b{"b" + std::to_string(i), {}, {}, "c" + std::to_string(col(rng)), "c" + std::to_string(col(rng))};
        const int L = len(rng);
        for (int k = 0; k < L; ++k) {
            b.top.push_back("c" + std::to_string(col(rng)));
            b.bottom.push_back("c" + std::to_string(col(rng)));
        }
        bars.push_back(b);
    }
    return BarSet(bars);
}

} // namespace

TEST(Solve, AllCOnOneByOne) {
    const auto r = solve(all_c_bar(), Domain::torus(1, 1));
    EXPECT_EQ(r.verdict, Verdict::sat);
    ASSERT_TRUE(r.witness);
    EXPECT_TRUE(validate_bar_tiling(all_c_bar(), *r.witness).ok());
}

TEST(Solve, MismatchedTileUnsatUpToSix) {
    for (int w = 1; w <= 6; ++w)
        for (int h = 1; h <= 6; ++h) {
            const auto r = solve(mismatched_bar(), Domain::torus(w, h));
            EXPECT_EQ(r.verdict, Verdict::unsat) << w << "x" << h;
            EXPECT_FALSE(r.witness);
        }
}

TEST(Solve, Fig1ColumnOnOneByThree) {
    const BarSet bars = tiles_as_bars(fig1_tiles());
    const auto r = solve(bars, Domain::torus(1, 3));
    ASSERT_EQ(r.verdict, Verdict::sat);
    // the canonical witness: scanline tries t1 first at (0,0)
    TileGrid g(1, 3, true, {"", "", ""});
    for (const auto& p : r.witness->placements) g.at(p.x, p.y) = p.item;
    EXPECT_EQ(g.cells, (std::vector<std::string>{"t1", "t3", "t2"}));
    EXPECT_TRUE(oracle::same_up_to_translation(g, fig1_column()));
    EXPECT_TRUE(oracle::torus_tileable(fig1_tiles(), 1, 3));
}

TEST(Solve, TorusNarrowerThanLongestBarThrows) {
    const BarSet bars({Bar{"w", {"a", "a", "a"}, {"a", "a", "a"}, "e", "e"}});
    EXPECT_THROW(solve(bars, Domain::torus(2, 1)), Error);
    EXPECT_EQ(solve(bars, Domain::torus(3, 1)).verdict, Verdict::sat);
}

TEST(Solve, RectNeedsBarsToFit) {
    const BarSet bars({Bar{"w", {"a", "a"}, {"a", "a"}, "e", "f"}});
    EXPECT_EQ(solve(bars, Domain::rect(2, 2)).verdict, Verdict::sat);
    EXPECT_EQ(solve(bars, Domain::rect(3, 1)).verdict, Verdict::unsat);
    // torus needs right = left
    EXPECT_EQ(solve(bars, Domain::torus(2, 1)).verdict, Verdict::unsat);
}

TEST(Solve, WrappingBarsAreAllowed) {
    // a length-2 bar and a unit bar whose colors force the long bar across the seam
    const BarSet bars({Bar{"L", {"a", "a"}, {"a", "a"}, "p", "q"}, Bar{"u", {"a"}, {"a"}, "q", "p"}});
    const auto r = solve(bars, Domain::torus(3, 1));
    ASSERT_EQ(r.verdict, Verdict::sat);
    EXPECT_TRUE(validate_bar_tiling(bars, *r.witness).ok());
}

TEST(Solve, ExcludedBarsAreNotUsed) {
    const BarSet bars({Bar{"c", {"c"}, {"c"}, "c", "c"}, Bar{"d", {"d"}, {"d"}, "d", "d"}});
    SearchConfig cfg;
    cfg.excluded = {"c"};
    const auto r = solve(bars, Domain::torus(2, 2), cfg);
    ASSERT_EQ(r.verdict, Verdict::sat);
    for (const auto& p : r.witness->placements) EXPECT_EQ(p.item, "d");
    cfg.excluded = {"c", "d"};
    EXPECT_EQ(solve(bars, Domain::torus(2, 2), cfg).verdict, Verdict::unsat);
    cfg.excluded = {"zz"};
    EXPECT_THROW(solve(bars, Domain::torus(2, 2), cfg), Error);
}

TEST(Solve, BudgetExhaustionIsNotUnsat) {
    const Reduction red = reduce(single_c());
    SearchConfig cfg;
    cfg.node_budget = 0;
    const auto r = solve(red.bars, Domain::torus(6, 8), cfg);
    EXPECT_EQ(r.verdict, Verdict::exhausted_budget);
    EXPECT_FALSE(r.witness);
    EXPECT_EQ(to_string(r.verdict), "exhausted-budget");
}

TEST(Solve, DeterministicWitness) {
    const Reduction red = reduce(single_c());
    const auto a = solve(red.bars, Domain::torus(6, 8));
    const auto b = solve(red.bars, Domain::torus(6, 8));
    ASSERT_EQ(a.verdict, Verdict::sat);
    EXPECT_EQ(a.witness->placements, b.witness->placements);
    EXPECT_EQ(a.stats.nodes, b.stats.nodes);
}

TEST(Solve, ReductionOfAllCFindsThePatternTorus) {
    const Reduction red = reduce(single_c());
    const auto r = solve(red.bars, Domain::torus(6, 8));
    ASSERT_EQ(r.verdict, Verdict::sat);
    EXPECT_TRUE(validate_bar_tiling(red.bars, *r.witness).ok());
    EXPECT_EQ(decode_tiling(red.manifest, *r.witness).at(0, 0), "c");
    // a torus that is not a multiple of the pattern period
    EXPECT_EQ(solve(red.bars, Domain::torus(5, 8)).verdict, Verdict::unsat);
    EXPECT_EQ(solve(red.bars, Domain::torus(6, 4)).verdict, Verdict::unsat);
}

TEST(Solve, AgreesWithTileOracleOnSmallSets) {
    const auto sets = oracle::all_tile_sets(2, 2);
    ASSERT_EQ(sets.size(), 16u + 16u * 15u / 2u);
    for (const auto& tiles : sets)
        for (int w = 1; w <= 3; ++w)
            for (int h = 1; h <= 3; ++h) {
                const bool expect = oracle::torus_tileable(tiles, w, h);
                const auto r = solve(tiles_as_bars(tiles), Domain::torus(w, h));
                ASSERT_EQ(r.verdict == Verdict::sat, expect) << tiles[0].name << " " << w << "x" << h;
            }
}

TEST(Solve, AgreesWithBarOracleOnRandomBarSets) {
    std::mt19937 rng(11);
    int sat = 0, total = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const BarSet bars = random_bars(rng, 1 + trial % 3, 3, 2);
        for (int w = bars.max_length(); w <= 4; ++w)
            for (int h = 1; h <= 3; ++h)
                for (bool torus : {true, false}) {
                    const Domain d = torus ? Domain::torus(w, h) : Domain::rect(w, h);
                    const bool expect = oracle::bars_tileable(bars, d);
                    const auto r = solve(bars, d);
                    ASSERT_EQ(r.verdict == Verdict::sat, expect) << "trial " << trial << " " << w << "x" << h << (torus ? " torus" : " rect");
                    if (r.witness) {
                        EXPECT_TRUE(validate_bar_tiling(bars, *r.witness).ok());
                    }
                    sat += expect;
                    ++total;
                }
    }
    // both outcomes are exercised
    EXPECT_GT(sat, 0);
    EXPECT_LT(sat, total);
}

TEST(Solve, ExclusionMonotonicity) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const BarSet bars = random_bars(rng, 3, 2, 2);
        const Domain d = Domain::torus(3, 3);
        if (solve(bars, d).verdict != Verdict::unsat) continue;
        for (const auto& b : bars.bars()) {
            SearchConfig cfg;
            cfg.excluded = {b.name};
            EXPECT_EQ(solve(bars, d, cfg).verdict, Verdict::unsat);
        }
    }
}

TEST(CompleteRegion, EmptyPinsUnitRegion) {
    const auto r = complete_region(all_c_bar(), {}, Region{0, 0, 1, 1});
    ASSERT_EQ(r.verdict, Verdict::sat);
    EXPECT_EQ(r.witness->placements.size(), 1u);
}

TEST(CompleteRegion, InconsistentPinsThrow) {
    EXPECT_THROW(complete_region(mismatched_bar(), {{"t", 0, 0}, {"t", 0, 1}}, Region{0, 0, 1, 1}), Error);
    EXPECT_THROW(complete_region(all_c_bar(), {{"c", 0, 0}, {"c", 0, 0}}, Region{0, 0, 1, 1}), Error);
}

TEST(CompleteRegion, DeadEndAndEscape) {
    // "t" has top a and bottom b; nothing sits on a, so a region above a
    // pinned t is a dead end while a region beside it is not
    const BarSet bars({Bar{"t", {"a"}, {"b"}, "c", "c"}, Bar{"u", {"b"}, {"b"}, "c", "c"}});
    EXPECT_EQ(complete_region(bars, {{"t", 0, 0}}, Region{0, 1, 1, 1}).verdict, Verdict::unsat);
    const auto r = complete_region(bars, {{"t", 0, 0}}, Region{-2, 0, 2, 1});
    ASSERT_EQ(r.verdict, Verdict::sat);
    EXPECT_TRUE(validate_bar_tiling(bars, *r.witness).ok());
}

TEST(CompleteRegion, BarsMayStickOutOfTheRegion) {
    const BarSet bars({Bar{"w", {"a", "a", "a"}, {"a", "a", "a"}, "e", "e"}});
    const auto r = complete_region(bars, {}, Region{0, 0, 1, 1});
    ASSERT_EQ(r.verdict, Verdict::sat);
    ASSERT_EQ(r.witness->placements.size(), 1u);
}
