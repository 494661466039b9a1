#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "test_data.hpp"
#include "wangbars/analysis.hpp"

using namespace wangbars;

TEST(Deficiency, Fig1IsZero) {
    const auto d = color_deficiency(fig1_tiles());
    EXPECT_EQ(d.n, 3);
    EXPECT_EQ(d.c, 3);
    EXPECT_EQ(d.cd, 0);
    EXPECT_EQ((std::vector<int>{d.north, d.east, d.south, d.west}), oracle::direction_counts(fig1_tiles()));
}

TEST(Deficiency, SingleTile) {
    const auto d = color_deficiency(single_c());
    EXPECT_EQ(d.n, 1);
    EXPECT_EQ(d.c, 1);
    EXPECT_EQ(d.cd, 0);
}

TEST(Deficiency, MatchesOracleCounts) {
    for (const auto& tiles : oracle::all_tile_sets(2, 3)) {
        const auto d = color_deficiency(tiles);
        const auto c = oracle::direction_counts(tiles);
        EXPECT_EQ((std::vector<int>{d.north, d.east, d.south, d.west}), c);
        EXPECT_EQ(d.cd, static_cast<int>(tiles.size()) - *std::max_element(c.begin(), c.end()));
    }
}

TEST(Cut, UnitBarUnchanged) {
    const CutResult r = cut_bars(BarSet({Bar{"u", {"a"}, {"b"}, "l", "r"}}));
    EXPECT_EQ(r.t, 0);
    ASSERT_EQ(r.tiles.size(), 1u);
    EXPECT_EQ(r.tiles[0], (Tile{"u", "a", "r", "b", "l"}));
}

TEST(Cut, LengthThreeChainsLeftToRight) {
    const CutResult r = cut_bars(BarSet({Bar{"w", {"a", "b", "c"}, {"d", "e", "f"}, "l", "r"}}));
    EXPECT_EQ(r.t, 2);
    ASSERT_EQ(r.tiles.size(), 3u);
    ASSERT_EQ(r.fresh.size(), 2u);
    EXPECT_NE(r.fresh[0], r.fresh[1]);
    EXPECT_EQ(r.tiles[0].west, "l");
    EXPECT_EQ(r.tiles[0].east, r.fresh[0]);
    EXPECT_EQ(r.tiles[1].west, r.fresh[0]);
    EXPECT_EQ(r.tiles[1].east, r.fresh[1]);
    EXPECT_EQ(r.tiles[2].west, r.fresh[1]);
    EXPECT_EQ(r.tiles[2].east, "r");
    EXPECT_EQ(r.tiles[1].north, "b");
    EXPECT_EQ(r.tiles[1].south, "e");
}

TEST(Cut, Fig1Reduction) {
    const Reduction red = reduce(fig1_tiles());
    const CutResult r = cut_bars(red.bars);
    int t = 0;
    for (const auto& b : red.bars.bars()) t += b.length() - 1;
    EXPECT_EQ(t, 26 + 8 + 8 + 22 + 22);
    EXPECT_EQ(r.t, t);
    EXPECT_EQ(r.t, 86);
    EXPECT_EQ(r.tiles.size(), 115u);
    const auto d = color_deficiency(r.tiles);
    EXPECT_EQ(d.east, 4 + 86);
    EXPECT_EQ(d.west, 4 + 86);
    EXPECT_EQ(d.cd, 25);
    for (const auto& c : r.fresh) EXPECT_FALSE(red.bars.colors().count(c));
}

TEST(Cut, DeficiencyFormulaOnRandomReductions) {
    // cd = (29 + t) - max(4 + t, other directions). East/west dominate, giving
    // 25, once t >= 18: the other directions use at most 22 colors.
    std::mt19937 rng(17);
    for (int n = 1; n <= 4; ++n)
        for (int m = 1; m <= 4; ++m)
            for (int rep = 0; rep < 3; ++rep) {
                std::vector<Tile> tiles;
                for (int i = 0; i < n; ++i) {
                    Tile tl{"t" + std::to_string(i), "", "", "", ""};
                    for (Color* c : {&tl.north, &tl.east, &tl.south, &tl.west}) *c = "c" + std::to_string(rng() % m);
                    tiles.push_back(tl);
                }
                const TileSet ts(tiles);
                const Reduction red = reduce(ts);
                const CutResult r = cut_bars(red.bars);
                const int mm = red.manifest.m;
                const int t = (3 * n - 2) * (2 * mm + 1) + 6 * mm - 1;
                ASSERT_EQ(r.t, t);
                const auto counts = oracle::direction_counts(r.tiles);
                EXPECT_EQ(counts[1], 4 + t);
                EXPECT_EQ(counts[3], 4 + t);
                const int c = *std::max_element(counts.begin(), counts.end());
                const auto d = color_deficiency(r.tiles);
                EXPECT_EQ(d.cd, 29 + t - c);
                if (t >= 18) {
                    EXPECT_EQ(d.cd, 25);
                }
            }
}

TEST(Cut, SmallReductionsFallBelowTwentyFive) {
    // n = m = 1: t = 8 and the top/bottom directions carry 22 colors
    const CutResult r = cut_bars(reduce(single_c()).bars);
    EXPECT_EQ(r.t, 8);
    const auto d = color_deficiency(r.tiles);
    EXPECT_EQ(d.north, 22);
    EXPECT_EQ(d.cd, 37 - 22);
}

TEST(Cut, PreservesTorusTileability) {
    const Reduction red = reduce(single_c());
    const BarSet cut = tiles_as_bars(cut_bars(red.bars).tiles);
    for (auto [w, h] : {std::pair{6, 8}, {3, 8}, {6, 4}, {12, 8}, {4, 8}}) {
        const auto a = solve(red.bars, Domain::torus(w, h));
        const auto b = solve(cut, Domain::torus(w, h));
        EXPECT_EQ(a.verdict, b.verdict) << w << "x" << h;
    }
}

TEST(Pad, IdentityAtCurrentDeficiency) {
    EXPECT_EQ(pad_to_deficiency(fig1_tiles(), 0), fig1_tiles());
    const CutResult r = cut_bars(reduce(fig1_tiles()).bars);
    EXPECT_EQ(pad_to_deficiency(r.tiles, 25), r.tiles);
}

TEST(Pad, OnlyNorthGrowsWhenItHasRoom) {
    // the cut of the three-tile example has slack on north
    const CutResult r = cut_bars(reduce(fig1_tiles()).bars);
    const auto before = color_deficiency(r.tiles);
    ASSERT_LT(before.north + 3, before.c);
    const TileSet padded = pad_to_deficiency(r.tiles, 28);
    const auto after = color_deficiency(padded);
    EXPECT_EQ(after.cd, 28);
    EXPECT_EQ(after.c, before.c);
    EXPECT_EQ(after.north, before.north + 3);
    EXPECT_EQ(after.east, before.east);
    EXPECT_EQ(after.south, before.south);
    EXPECT_EQ(after.west, before.west);
}

TEST(Pad, UsesOtherSidesWhenNorthIsFull) {
    const CutResult r = cut_bars(reduce(single_c()).bars);
    const auto before = color_deficiency(r.tiles);
    ASSERT_EQ(before.cd, 15);
    ASSERT_EQ(before.north, before.c);
    const TileSet padded = pad_to_deficiency(r.tiles, 25);
    const auto after = color_deficiency(padded);
    EXPECT_EQ(after.cd, 25);
    EXPECT_EQ(after.n, before.n + 10);
    EXPECT_EQ(after.c, before.c);
    EXPECT_EQ(after.north + after.east + after.south + after.west, before.north + before.east + before.south + before.west + 10);
}

TEST(Pad, JunkTilesNeverTile) {
    // the padded single tile set still tiles exactly the tori the original does,
    // and no witness uses a junk tile
    const TileSet tiles({{"c", "c", "c", "c", "c"}, {"d", "c", "d", "c", "d"}});
    const TileSet padded = pad_to_deficiency(tiles, 1);
    ASSERT_EQ(padded.size(), 3u);
    for (int w = 1; w <= 3; ++w)
        for (int h = 1; h <= 3; ++h) {
            EXPECT_EQ(oracle::torus_tileable(padded, w, h), oracle::torus_tileable(tiles, w, h));
            const auto s = solve(tiles_as_bars(padded), Domain::torus(w, h));
            ASSERT_EQ(s.verdict, Verdict::sat);
            for (const auto& p : s.witness->placements) EXPECT_NE(p.item.rfind("junk", 0), 0u);
        }
}

TEST(Pad, PreconditionViolations) {
    EXPECT_THROW(pad_to_deficiency(fig1_tiles(), -1), Error);
    // three-tile example: every direction already has the maximal count
    EXPECT_THROW(pad_to_deficiency(fig1_tiles(), 1), Error);
}

TEST(Facts, AllCInstanceAllScenariosPass) {
    const FactReport rep = run_fact_suite(single_c());
    ASSERT_FALSE(rep.results.empty());
    for (const auto& r : rep.results) EXPECT_TRUE(r.passed()) << r.name << " observed " << r.observed << " " << r.detail;
    EXPECT_TRUE(rep.passed());
}

TEST(Facts, LegalJoinIsSat) {
    const Reduction red = reduce(single_c());
    for (const auto& f : fact_scenarios(red))
        if (f.name == "F4-legal-join") {
            const auto r = complete_region(red.bars, f.pins, f.region);
            ASSERT_EQ(r.verdict, Verdict::sat);
            EXPECT_TRUE(validate_bar_tiling(red.bars, *r.witness).ok());
        }
}

TEST(Facts, ScenarioPinsAreTakenFromThePattern) {
    // every pin of the sat scenarios occurs in the simulated pattern, up to translation
    const Reduction red = reduce(single_c());
    const Tiling pattern = simulate_tiling(red.manifest, TileGrid(1, 1, true, {"c"}));
    std::set<std::tuple<std::string, int, int>> in_pattern;
    for (const auto& p : pattern.placements) in_pattern.insert({p.item, p.x, p.y});
    for (const auto& f : fact_scenarios(red)) {
        if (f.kind != FactKind::complete || f.expected != "sat") continue;
        bool found = false;
        for (int dx = 0; dx < pattern.domain.width && !found; ++dx)
            for (int dy = 0; dy < pattern.domain.height && !found; ++dy) {
                bool all = true;
                for (const auto& p : f.pins)
                    all &= in_pattern.count({p.item, floor_mod(p.x + dx, pattern.domain.width), floor_mod(p.y + dy, pattern.domain.height)}) > 0;
                found = all;
            }
        EXPECT_TRUE(found) << f.name;
    }
}

TEST(Facts, TwoColorInstance) {
    const TileSet tiles({{"t", "a", "a", "b", "a"}, {"u", "b", "a", "a", "a"}});
    const FactReport rep = run_fact_suite(tiles);
    for (const auto& r : rep.results) {
        if (r.observed == "skipped") continue;
        EXPECT_TRUE(r.passed()) << r.name << " observed " << r.observed;
    }
}

TEST(Facts, BudgetExhaustionIsReported) {
    FactSuiteConfig cfg;
    cfg.node_budget = 0;
    const FactReport rep = run_fact_suite(single_c(), cfg);
    bool seen = false;
    for (const auto& r : rep.results) seen |= r.observed == "exhausted-budget";
    EXPECT_TRUE(seen);
    EXPECT_FALSE(rep.passed());
}
