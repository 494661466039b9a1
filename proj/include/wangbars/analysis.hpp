#pragma once

// Color deficiency, cutting bars into Wang tiles, padding, and the fact
// scenarios that pin down the forced tiling pattern.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wangbars/core.hpp"
#include "wangbars/reduction.hpp"
#include "wangbars/solver.hpp"

namespace wangbars {

struct DeficiencyReport {
    int n = 0;
    int north = 0, east = 0, south = 0, west = 0;
    int c = 0;
    int cd = 0;
};

inline DeficiencyReport color_deficiency(const TileSet& tiles) {
    std::set<Color> N, E, S, W;
    for (const auto& t : tiles.tiles()) {
        N.insert(t.north);
        E.insert(t.east);
        S.insert(t.south);
        W.insert(t.west);
    }
    DeficiencyReport r;
    r.n = static_cast<int>(tiles.size());
    r.north = static_cast<int>(N.size());
    r.east = static_cast<int>(E.size());
    r.south = static_cast<int>(S.size());
    r.west = static_cast<int>(W.size());
    r.c = std::max({r.north, r.east, r.south, r.west});
    r.cd = r.n - r.c;
    return r;
}

struct CutResult {
    TileSet tiles;
    int t = 0;
    std::vector<Color> fresh;
};

namespace detail {

inline std::string fresh_token(const std::string& stem, int& counter, const std::set<std::string>& taken) {
    while (true) {
        std::string s = stem + std::to_string(++counter);
        if (!taken.count(s)) return s;
    }
}

} // namespace detail

/// Splits every bar into unit pieces left to right; each cut gets its own
/// fresh glue color on both new sides.
inline CutResult cut_bars(const BarSet& bars) {
    std::set<std::string> colors = bars.colors(), names;
    for (const auto& b : bars.bars()) names.insert(b.name);
    int counter = 0;
    CutResult r;
    std::vector<Tile> out;
    for (const auto& b : bars.bars()) {
        const int L = b.length();
        if (L == 1) {
            out.push_back({b.name, b.top[0], b.right, b.bottom[0], b.left});
            continue;
        }
        Color west = b.left;
        for (int k = 0; k < L; ++k) {
            Color east = b.right;
            if (k + 1 < L) {
                east = detail::fresh_token("@cut", counter, colors);
                colors.insert(east);
                r.fresh.push_back(east);
                ++r.t;
            }
            std::string name = b.name + "_p" + std::to_string(k);
            while (names.count(name)) name += "_";
            names.insert(name);
            const auto kk = static_cast<std::size_t>(k);
            out.push_back({name, b.top[kk], east, b.bottom[kk], west});
            west = east;
        }
    }
    r.tiles = TileSet(std::move(out));
    return r;
}

/// Appends junk tiles until the deficiency reaches `target`. A junk tile
/// copies tiles[0] except for one fresh color on the first side (N, E, S, W
/// order) whose direction still has fewer than c colors; nothing can meet
/// a fresh color, so junk never takes part in a tiling, and c is unchanged.
inline TileSet pad_to_deficiency(const TileSet& tiles, int target) {
    const DeficiencyReport d = color_deficiency(tiles);
    if (target < d.cd) throw Error("deficiency " + std::to_string(d.cd) + " already exceeds target " + std::to_string(target));
    const int need = target - d.cd;
    if (need == 0) return tiles;
    int counts[4] = {d.north, d.east, d.south, d.west};
    int room = 0;
    for (int c : counts) room += d.c - c;
    if (room < need) throw Error("cannot pad to deficiency " + std::to_string(target) + " without raising the color count");

    std::set<std::string> taken = tiles.colors(), names;
    for (const auto& t : tiles.tiles()) names.insert(t.name);
    std::vector<Tile> out = tiles.tiles();
    int counter = 0, junk = 0;
    for (int k = 0; k < need; ++k) {
        Tile t = tiles[0];
        t.name = detail::fresh_token("junk", junk, names);
        names.insert(t.name);
        const Color fresh = detail::fresh_token("@junk", counter, taken);
        taken.insert(fresh);
        int dir = 0;
        while (counts[dir] >= d.c) ++dir;
        ++counts[dir];
        Color* side[4] = {&t.north, &t.east, &t.south, &t.west};
        *side[dir] = fresh;
        out.push_back(std::move(t));
    }
    return TileSet(std::move(out));
}

// ---------------------------------------------------------------------------
// Fact scenarios

enum class FactKind { solve_excluded, complete, unique_extension };

struct FactScenario {
    std::string name;
    FactKind kind = FactKind::complete;
    std::string expected; // "sat", "unsat", or "unique"
    std::vector<Placement> pins;
    Region region;
    std::set<std::string> excluded;
    std::vector<Domain> tori;                 // solve_excluded
    Placement anchor;                         // unique_extension: cell (x, y) to cover
    std::set<std::pair<std::string, int>> allowed; // unique_extension: expected (bar, offset) survivors
    std::string skipped;                      // non-empty: scenario not constructible
};

struct FactResult {
    std::string name;
    std::string expected;
    std::string observed;
    Region region;
    std::uint64_t nodes = 0;
    std::chrono::microseconds elapsed{0};
    std::string detail;

    bool passed() const { return observed == expected; }
};

struct FactReport {
    std::vector<FactResult> results;

    bool passed() const {
        for (const auto& r : results)
            if (!r.passed()) return false;
        return !results.empty();
    }
};

namespace detail {

/// Bars of one lattice slot of the pattern: selector centred on column c of
/// backbone row y, and the encoder whose section s has its locator N to the
/// right of c.
struct SlotFrame {
    const ReductionManifest& mf;
    int c, y, s;

    int locator() const { return c + mf.geometry.encoder_length; }
    const std::string& name(BarRole r) const { return mf.bar(r); }
    const Tile& tile() const { return mf.tiles[static_cast<std::size_t>(s)]; }

    std::vector<Placement> backbone() const {
        const int m = mf.m, N = mf.geometry.encoder_length, sec = mf.geometry.section_length;
        std::vector<Placement> out{{name({Group::selector, 4}), c - m, y}};
        const int enc = c + N - s * sec - m;
        out.push_back({name({Group::encoder}), enc, y});
        for (int k = 0; k < mf.n - 1 - s; ++k) out.push_back({name({Group::aligner}), c + m + 1 + k * sec, y});
        for (int k = 0; k < s; ++k) out.push_back({name({Group::aligner}), enc + N + k * sec, y});
        return out;
    }
    std::vector<Placement> stack_up() const {
        std::vector<Placement> out;
        for (int k = 1; k <= 3; ++k) out.push_back({name({Group::selector, k}), c, y + 4 - k});
        return out;
    }
    std::vector<Placement> stack_down() const {
        std::vector<Placement> out;
        for (int k = 5; k <= 7; ++k) out.push_back({name({Group::selector, k}), c, y + 4 - k});
        return out;
    }
    int left_column() const { return locator() - mf.m + mf.order.index_of(tile().west); }
    int right_column() const { return locator() + 1 + mf.order.index_of(tile().south); }
    std::vector<Placement> left_chain(bool with_up = true) const {
        const int col = left_column(), lam = mf.geometry.linker_length;
        std::vector<Placement> out{{name({Group::linker_small_down}), col, y - 1},
                                   {name({Group::linker_long_dl}), col - lam + 1, y - 2}};
        if (with_up) out.push_back({name({Group::linker_small_up}), col - lam + 1, y - 3});
        return out;
    }
    std::vector<Placement> right_chain(bool with_up = true) const {
        const int col = right_column(), lam = mf.geometry.linker_length;
        std::vector<Placement> out{{name({Group::linker_small_down}), col, y - 1},
                                   {name({Group::linker_long_dr}), col, y - 2}};
        if (with_up) out.push_back({name({Group::linker_small_up}), col + lam - 1, y - 3});
        return out;
    }
};

inline FactScenario scenario(std::string name, FactKind kind, std::string expected) {
    FactScenario f;
    f.name = std::move(name);
    f.kind = kind;
    f.expected = std::move(expected);
    return f;
}

inline void append(std::vector<Placement>& dst, const std::vector<Placement>& src) { dst.insert(dst.end(), src.begin(), src.end()); }

inline std::optional<int> find_tile(const TileSet& tiles, const std::function<bool(const Tile&)>& pred) {
    for (std::size_t i = 0; i < tiles.size(); ++i)
        if (pred(tiles[i])) return static_cast<int>(i);
    return std::nullopt;
}

inline bool pins_consistent(const BarSet& bars, const std::vector<Placement>& pins) {
    return validate_bar_tiling(bars, Tiling{Domain::unbounded(), pins}).ok();
}

} // namespace detail

struct FactSuiteConfig {
    std::uint64_t node_budget = 10'000'000;
    int f1_max_width = 12;
    int f1_max_height = 8;
};

/// Scenario table for reduce(tiles). Frame: the upper backbone row is y = 4
/// with a selected locator at column 0, the lower one is y = 0 with a
/// selector centred on column 0 and a selected locator at column -N.
inline std::vector<FactScenario> fact_scenarios(const Reduction& red, const FactSuiteConfig& cfg = {}) {
    const auto& mf = red.manifest;
    const BarSet& bars = red.bars;
    const int m = mf.m, N = mf.geometry.encoder_length, lam = mf.geometry.linker_length;
    const Palette& p = mf.palette;
    auto name = [&](BarRole r) { return mf.bar(r); };
    std::vector<FactScenario> out;

    // F1: without selectors no torus tiling exists; with them the pattern torus tiles.
    {
        FactScenario f = detail::scenario("F1-no-selectors", FactKind::solve_excluded, "unsat");
        for (int k = 1; k <= 7; ++k) f.excluded.insert(name({Group::selector, k}));
        for (int w = bars.max_length(); w <= std::max(cfg.f1_max_width, bars.max_length()); ++w)
            for (int h = 1; h <= cfg.f1_max_height; ++h) f.tori.push_back(Domain::torus(w, h));
        out.push_back(f);

        FactScenario g = detail::scenario("F1-control", FactKind::solve_excluded, "sat");
        g.tori.push_back(Domain::torus(2 * N, 8));
        auto self = detail::find_tile(mf.tiles, [](const Tile& t) { return t.north == t.south && t.east == t.west; });
        if (!self) g.skipped = "no tile tiles a 1x1 torus";
        out.push_back(g);
    }

    // F2: the only bars that fit on the pointers of a pinned selector are
    // encoders touching them with a locator.
    {
        detail::SlotFrame sel{mf, 0, 0, 0};
        std::vector<Placement> pins = {{name({Group::selector, 4}), -m, 0}};
        detail::append(pins, sel.stack_up());
        detail::append(pins, sel.stack_down());
        std::set<std::pair<std::string, int>> locators;
        for (int s = 0; s < mf.n; ++s) locators.insert({name({Group::encoder}), s * mf.geometry.section_length + m});

        FactScenario up = detail::scenario("F2-above-top-pointer", FactKind::unique_extension, "unique");
        up.pins = pins;
        up.region = Region{-N - m, 4, 2 * (N + m) + 1, 1};
        up.anchor = {"", 0, 4};
        up.allowed = locators;
        out.push_back(up);

        FactScenario down = detail::scenario("F2-below-bottom-pointer", FactKind::unique_extension, "unique");
        down.pins = pins;
        down.region = Region{-N - m, -4, 2 * (N + m) + 1, 1};
        down.anchor = {"", 0, -4};
        down.allowed = locators;
        out.push_back(down);
    }

    // Upper slot A (locator 0, row 4), its gripping selector B (centre 0,
    // row 0), and the lower slot C whose locator sits at -N.
    const int ta = 0;
    auto tc = detail::find_tile(mf.tiles, [&](const Tile& t) { return t.east == mf.tiles[ta].west; });
    auto tb = detail::find_tile(mf.tiles, [&](const Tile& t) { return t.north == mf.tiles[ta].south; });
    detail::SlotFrame A{mf, -N, 4, ta};
    auto band = [&](int x0, int x1) { return Region{x0, 1, x1 - x0 + 1, 3}; };
    const int lo = -2 * N - m - 1, hi = N + m + 1;

    // F3: a filler under a selected a4 instead of a linker is a dead end.
    {
        FactScenario f = detail::scenario("F3-filler-under-left-arm", FactKind::complete, "unsat");
        FactScenario g = detail::scenario("F3-filler-under-right-arm", FactKind::complete, "unsat");
        if (!tc || !tb) {
            f.skipped = g.skipped = "no tiles border tile 0 on the west and south";
        } else {
            detail::SlotFrame B{mf, 0, 0, *tb}, C{mf, -2 * N, 0, *tc};
            std::vector<Placement> base = A.backbone();
            detail::append(base, B.backbone());
            detail::append(base, C.backbone());
            detail::append(base, B.stack_up());
            f.pins = base;
            f.pins.push_back({name({Group::filler1, 2}), A.left_column(), 3});
            f.region = band(lo, hi);
            g.pins = base;
            g.pins.push_back({name({Group::filler1, 2}), A.right_column(), 3});
            g.region = band(lo, hi);
        }
        out.push_back(f);
        out.push_back(g);
    }

    // F4/F5: linkers join a left arm above to a right arm below at equal index.
    {
        FactScenario legal = detail::scenario("F4-legal-join", FactKind::complete, "sat");
        FactScenario same = detail::scenario("F4-left-to-left", FactKind::complete, "unsat");
        FactScenario shift = detail::scenario("F5-index-mismatch", FactKind::complete, "unsat");
        if (!tc) {
            legal.skipped = same.skipped = shift.skipped = "no tile matches the west side of tile 0";
        } else {
            detail::SlotFrame C{mf, -2 * N, 0, *tc};
            const auto enc = [&](const detail::SlotFrame& f) {
                for (const auto& q : f.backbone())
                    if (q.item == name({Group::encoder})) return q;
                throw std::logic_error("slot without encoder");
            };
            const Placement lower = enc(C);
            const int landing = A.left_column() - lam + 1;

            legal.pins = A.backbone();
            legal.pins.push_back(lower);
            detail::append(legal.pins, A.left_chain());
            legal.region = band(lo, hi);

            // the lower encoder moved so that a left-arm a3 sits under the chain
            same.pins = A.backbone();
            detail::append(same.pins, A.left_chain());
            const Bar& e = bars.at(name({Group::encoder}));
            std::optional<int> left_a3;
            for (int k = 0; k < e.length(); ++k) {
                const int in_section = k % mf.geometry.section_length;
                if (in_section < m && e.top[static_cast<std::size_t>(k)] == p.A(3)) {
                    left_a3 = k;
                    break;
                }
            }
            same.pins.push_back({lower.item, landing - *left_a3, 0});
            same.region = band(lo, hi);

            // the lower encoder one column off: arm indices differ by one
            shift.pins = A.backbone();
            detail::append(shift.pins, A.left_chain(false));
            shift.pins.push_back({lower.item, lower.x + 1, 0});
            shift.region = band(lo, hi);
        }
        out.push_back(legal);
        out.push_back(same);
        out.push_back(shift);
    }

    // F6: the gap between two linkers above a selected locator must hold a
    // selector stack; a filler there is a dead end.
    {
        FactScenario f = detail::scenario("F6-filler-over-locator", FactKind::complete, "unsat");
        FactScenario ctl = detail::scenario("F6-control", FactKind::complete, "sat");
        std::optional<int> ta2;
        if (tc) ta2 = detail::find_tile(mf.tiles, [&](const Tile& t) { return t.south == mf.tiles[*tc].north; });
        if (!tc || !tb || !ta2) {
            f.skipped = ctl.skipped = "no tiles complete the frame";
        } else {
            detail::SlotFrame A2{mf, -3 * N, 4, *ta2}, B{mf, 0, 0, *tb}, C{mf, -2 * N, 0, *tc};
            std::vector<Placement> base = A.backbone();
            detail::append(base, A2.backbone());
            detail::append(base, B.backbone());
            detail::append(base, C.backbone());
            detail::append(base, A.left_chain());
            detail::append(base, A2.right_chain());
            f.pins = base;
            f.pins.push_back({name({Group::filler1, 5}), -N, 1});
            f.region = band(-3 * N - m - 1, hi);
            ctl.pins = base;
            detail::append(ctl.pins, A.stack_down());
            ctl.region = f.region;
        }
        out.push_back(f);
        out.push_back(ctl);
    }
    return out;
}

inline FactResult run_fact(const BarSet& bars, const FactScenario& f, const FactSuiteConfig& cfg = {}) {
    FactResult r;
    r.name = f.name;
    r.expected = f.expected;
    r.region = f.region;
    if (!f.skipped.empty()) {
        r.observed = "skipped";
        r.detail = f.skipped;
        return r;
    }
    SearchConfig sc;
    sc.node_budget = cfg.node_budget;
    sc.excluded = f.excluded;
    const auto t0 = std::chrono::steady_clock::now();
    auto finish = [&] {
        r.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0);
    };

    switch (f.kind) {
    case FactKind::solve_excluded: {
        bool any_sat = false;
        for (const auto& d : f.tori) {
            auto s = solve(bars, d, sc);
            r.nodes += s.stats.nodes;
            if (s.verdict == Verdict::exhausted_budget) {
                r.observed = "exhausted-budget";
                r.detail = "torus " + std::to_string(d.width) + "x" + std::to_string(d.height);
                finish();
                return r;
            }
            if (s.verdict == Verdict::sat) {
                any_sat = true;
                if (r.detail.empty()) r.detail = "sat on torus " + std::to_string(d.width) + "x" + std::to_string(d.height);
            }
        }
        r.observed = any_sat ? "sat" : "unsat";
        if (!any_sat) r.detail = std::to_string(f.tori.size()) + " tori";
        break;
    }
    case FactKind::complete: {
        if (!detail::pins_consistent(bars, f.pins)) {
            r.observed = "unsat";
            r.detail = "pins conflict";
            break;
        }
        auto s = complete_region(bars, f.pins, f.region, sc);
        r.nodes = s.stats.nodes;
        r.observed = std::string(to_string(s.verdict));
        break;
    }
    case FactKind::unique_extension: {
        std::set<std::pair<std::string, int>> survivors;
        for (const auto& b : bars.bars()) {
            for (int k = 0; k < b.length(); ++k) {
                auto pins = f.pins;
                pins.push_back({b.name, f.anchor.x - k, f.anchor.y});
                if (!detail::pins_consistent(bars, pins)) continue;
                auto s = complete_region(bars, pins, f.region, sc);
                r.nodes += s.stats.nodes;
                if (s.verdict == Verdict::exhausted_budget) {
                    r.observed = "exhausted-budget";
                    r.detail = b.name + " offset " + std::to_string(k);
                    finish();
                    return r;
                }
                if (s.verdict == Verdict::sat) survivors.insert({b.name, k});
            }
        }
        r.observed = survivors == f.allowed ? "unique" : "violated";
        for (const auto& [n, k] : survivors) r.detail += (r.detail.empty() ? "" : " ") + n + "@" + std::to_string(k);
        break;
    }
    }
    finish();
    return r;
}

inline FactReport run_fact_suite(const TileSet& tiles, const FactSuiteConfig& cfg = {}) {
    const Reduction red = reduce(tiles);
    FactReport report;
    for (const auto& f : fact_scenarios(red, cfg)) report.results.push_back(run_fact(red.bars, f, cfg));
    return report;
}

} // namespace wangbars
